#include "oracles.hpp"
#include "polyfw/objectives.hpp"
#include "polyfw/polytope_io.hpp"

#include <doctest.h>

using namespace polyfw;

TEST_CASE("quadratic over the simplex: projection of the target") {
  const Polytope poly = Polytope::simplex(3);
  const Vec target{{0.9, 0.4, -0.5}};
  const Objective f = quadratic(2.0 * Mat::Identity(3, 3), -2.0 * target, poly);
  REQUIRE(f.optimal_set);
  // Euclidean projection of (0.9, 0.4, -0.5) onto the simplex is (0.75, 0.25, 0).
  CHECK(f.optimal_set->points.front().isApprox(Vec{{0.75, 0.25, 0.0}}, 1e-9));
  CHECK(*f.f_star == doctest::Approx(0.295 - target.squaredNorm()));
  REQUIRE(f.holder);
  CHECK(f.holder->mu == doctest::Approx(1.0));
  CHECK(f.holder->theta == 0.5);
}

TEST_CASE("power distance certificate") {
  const Polytope poly = Polytope::simplex(3);
  const Objective f = power_distance(poly.centroid(), 4.0, poly);
  CHECK(*f.f_star == doctest::Approx(0.0));
  REQUIRE(f.holder);
  CHECK(f.holder->theta == 0.25);
  CHECK(f.holder->mu == 1.0);
  CHECK(audit_holder(f, poly, 200).passed);
  const Objective outside = power_distance(Vec{{1.0, 1.0, 1.0}}, 2.0, poly);
  CHECK_FALSE(outside.holder.has_value());
}

TEST_CASE("oracles pass their own audits") {
  const Polytope poly = named_polytope("box3");
  Mat Q(3, 3);
  Q << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 1;
  for (const Objective& f : {quadratic(Q, Vec{{-1.0, 0.0, 2.0}}, poly), power_distance(Vec{{0.2, 0.5, 0.4}}, 3.0, poly)}) {
    CHECK(audit_gradient(f, poly, 100).passed);
    CHECK(audit_convexity(f, poly, 100).passed);
    const double L = curvature_constant(f, poly);
    CHECK(audit_curvature(f, poly, L, 500).violations == 0);
  }
}

TEST_CASE("exact curvature of a quadratic is attained at a vertex difference") {
  const Polytope poly = Polytope::unit_box(2);
  Mat Q(2, 2);
  Q << 2, 1, 1, 2;
  const Objective f = quadratic(Q, Vec::Zero(2));
  CHECK(exact_curvature(f, poly) == doctest::Approx(6.0));  // d = (1, 1)
  CHECK(largest_eigenvalue(Q) == doctest::Approx(3.0));
  CHECK(curvature_constant(f, poly) >= exact_curvature(f, poly) - 1e-12);
  CHECK_THROWS_AS(exact_curvature(power_distance(Vec::Zero(2), 4.0), poly), InputError);
}

TEST_CASE("minimize_quadratic_over matches vertex enumeration on a linear objective") {
  const Polytope poly = named_polytope("trunc3");
  const Vec c{{1.0, -2.0, 0.5}};
  const QuadraticOptimum opt = minimize_quadratic_over(Mat::Zero(3, 3), c, poly);
  double best = 1e300;
  for (const Vec& v : poly.vertices()) best = std::min(best, c.dot(v));
  CHECK(opt.f_star == doctest::Approx(best));
}

TEST_CASE("distance to a segment") {
  OptimalSet seg{{Vec{{0.0, 0.0}}, Vec{{2.0, 0.0}}}};
  CHECK(distance_to_set(Vec{{1.0, 3.0}}, seg) == doctest::Approx(3.0));
  CHECK(distance_to_set(Vec{{3.0, 0.0}}, seg) == doctest::Approx(1.0));
}
