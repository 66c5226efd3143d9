#include "oracles.hpp"
#include "polyfw/polytope.hpp"
#include "polyfw/polytope_io.hpp"

#include <doctest.h>

#include <random>

using namespace polyfw;

namespace {

Vec brute_lmo_value(const Polytope& poly, const Vec& g) {
  Vec best = poly.vertices().front();
  for (const Vec& v : poly.vertices()) {
    if (g.dot(v) < g.dot(best)) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("named polytopes: sizes") {
  struct Row {
    const char* name;
    std::size_t verts, faces;
    int dim;
  };
  for (const Row& r : {Row{"simplex3", 3, 7, 2}, Row{"simplex4", 4, 15, 3}, Row{"box2", 4, 9, 2},
                       Row{"box3", 8, 27, 3}, Row{"l1ball2", 4, 9, 2}, Row{"l1ball3", 6, 27, 3},
                       Row{"trunc3", 6, 13, 2}}) {
    CAPTURE(r.name);
    const Polytope poly = named_polytope(r.name);
    CHECK(poly.vertices().size() == r.verts);
    CHECK(enumerate_faces(poly).size() == r.faces);
    CHECK(poly.affine_dim() == r.dim);
  }
}

TEST_CASE("simplex-like detection") {
  CHECK(named_polytope("simplex4").is_simplex_like());
  CHECK_FALSE(named_polytope("box2").is_simplex_like());
  CHECK_FALSE(named_polytope("l1ball2").is_simplex_like());
}

TEST_CASE("lmo attains the vertex minimum") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  for (const char* name : {"simplex4", "box3", "l1ball3", "trunc3", "box_2x1"}) {
    const Polytope poly = named_polytope(name);
    for (int k = 0; k < 50; ++k) {
      Vec g(poly.ambient_dim());
      for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = N(rng);
      const Vec v = poly.lmo(g);
      CHECK(g.dot(v) == doctest::Approx(g.dot(brute_lmo_value(poly, g))));
      CHECK(poly.is_vertex(v));
    }
  }
}

TEST_CASE("minimal face of sampled points") {
  const Polytope box = Polytope::unit_box(3);
  CHECK(box.minimal_face(Vec{{0.5, 0.5, 0.5}}).dim == 3);
  CHECK(box.minimal_face(Vec{{0.0, 0.5, 0.5}}).dim == 2);
  CHECK(box.minimal_face(Vec{{0.0, 1.0, 0.5}}).dim == 1);
  CHECK(box.minimal_face(Vec{{0.0, 1.0, 1.0}}).dim == 0);

  std::mt19937_64 rng(8);
  for (const char* name : {"simplex4", "box3", "l1ball3", "trunc3"}) {
    const Polytope poly = named_polytope(name);
    for (int k = 0; k < 40; ++k) {
      const Vec x = sample_point(poly, rng);
      CHECK(poly.contains(x));
      const Face F = poly.minimal_face(x);
      CHECK(poly.face_vertices(F).size() == oracle::minimal_face_vertices(poly, x).size());
    }
  }
}

TEST_CASE("max_step against bisection") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> N(0.0, 1.0);
  const Polytope poly = named_polytope("l1ball3");
  for (int k = 0; k < 50; ++k) {
    const Vec x = sample_point(poly, rng);
    Vec d(3);
    for (int i = 0; i < 3; ++i) d[i] = N(rng);
    CHECK(poly.max_step(x, d) == doctest::Approx(oracle::max_step_bisect(poly, x, d)).epsilon(1e-9));
  }
}

TEST_CASE("face masks round-trip") {
  const Polytope poly = named_polytope("box3");
  for (const FaceRecord& r : enumerate_faces(poly)) {
    const Face F = face_from_mask(poly, r.mask);
    CHECK(F.dim == r.dim);
    std::uint64_t back = 0;
    for (int i : poly.face_vertices(F)) back |= 1ull << i;
    CHECK(back == r.mask);
  }
}

TEST_CASE("from_vertices rejects interior points and duplicates") {
  std::vector<Vec> pts{Vec{{0.0, 0.0}}, Vec{{1.0, 0.0}}, Vec{{0.0, 1.0}}};
  const Polytope tri = Polytope::from_vertices(pts);
  CHECK(tri.vertices().size() == 3);
  CHECK_THROWS_AS(Polytope::from_vertices({pts[0], pts[1], pts[2], Vec{{0.2, 0.2}}}), InputError);
  CHECK_THROWS_AS(Polytope::from_vertices({pts[0], pts[1], pts[2], pts[1]}), InputError);
  CHECK(tri.contains(Vec{{0.3, 0.3}}));
  CHECK_FALSE(tri.contains(Vec{{0.6, 0.6}}));
}

TEST_CASE("scalar summaries") {
  CHECK(Polytope::unit_box(2).diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(named_polytope("box_2x1").diameter() == doctest::Approx(std::sqrt(5.0)));
  CHECK(Polytope::simplex(3).centroid().isApprox(Vec::Constant(3, 1.0 / 3.0)));
}

TEST_CASE("bad inputs throw") {
  CHECK_THROWS_AS(Polytope::simplex(0), InputError);
  CHECK_THROWS_AS(Polytope::box(Vec{{1.0}}, Vec{{0.0}}), InputError);
  CHECK_THROWS_AS(Polytope::unit_box(2).max_step(Vec{{3.0, 3.0}}, Vec{{1.0, 0.0}}), InfeasibleError);
}
