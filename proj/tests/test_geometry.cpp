#include "oracles.hpp"
#include "polyfw/geometry.hpp"
#include "polyfw/polytope_io.hpp"

#include <doctest.h>

#include <random>

using namespace polyfw;

namespace {

double brute_inner(const Polytope& poly, std::uint64_t F) {
  std::vector<std::uint64_t> faces;
  for (const FaceRecord& r : enumerate_faces(poly)) faces.push_back(r.mask);
  return oracle::inner_facial(poly.vertices(), faces, F);
}

double brute_outer(const Polytope& poly, std::uint64_t F) {
  std::vector<std::uint64_t> faces;
  for (const FaceRecord& r : enumerate_faces(poly)) faces.push_back(r.mask);
  return oracle::outer_facial(poly.vertices(), faces, F);
}

}  // namespace

TEST_CASE("frozen facial distances") {
  const Polytope box = Polytope::unit_box(2);
  const Face v0 = box.minimal_face(Vec{{0.0, 0.0}});
  CHECK(inner_facial_distance(box, v0) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(outer_facial_distance(box, v0) == doctest::Approx(1.0).epsilon(1e-12));
  const Polytope rect = named_polytope("box_2x1");
  CHECK(inner_facial_distance(rect, rect.minimal_face(Vec{{0.0, 0.0}})) ==
        doctest::Approx(2 * std::sqrt(5.0) / 5).epsilon(1e-12));
  // Regular simplex Delta_3: the vertex e1 is at distance sqrt(3/2) from the opposite edge.
  const Polytope tri = Polytope::simplex(3);
  CHECK(inner_facial_distance(tri, tri.minimal_face(Vec{{1.0, 0.0, 0.0}})) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
}

TEST_CASE("facial distances match brute force on every face") {
  for (const char* name : {"simplex4", "box3", "l1ball3", "trunc3", "box_2x1"}) {
    CAPTURE(name);
    const Polytope poly = named_polytope(name);
    for (const FaceRecord& r : enumerate_faces(poly)) {
      const Face F = face_from_mask(poly, r.mask);
      if (r.dim < poly.affine_dim()) {
        CHECK(inner_facial_distance(poly, F) == doctest::Approx(brute_inner(poly, r.mask)).epsilon(1e-9));
      }
      CHECK(outer_facial_distance(poly, F) == doctest::Approx(brute_outer(poly, r.mask)).epsilon(1e-9));
    }
  }
}

TEST_CASE("lower bounds never exceed the exact values") {
  for (const char* name : {"simplex4", "box3", "l1ball3", "trunc3"}) {
    const Polytope poly = named_polytope(name);
    for (const FaceRecord& r : enumerate_faces(poly)) {
      if (r.dim == poly.affine_dim()) continue;
      const Face F = face_from_mask(poly, r.mask);
      CHECK(inner_facial_lower_bound(poly, F) <= inner_facial_distance(poly, F) + 1e-9);
      CHECK(outer_facial_lower_bound(poly, F) <= outer_facial_distance(poly, F) + 1e-9);
      CHECK(inner_facial_lower_bound(poly, F) > 0.0);
    }
  }
}

TEST_CASE("std-form shortcut on the simplex") {
  const Polytope poly = Polytope::simplex(4);
  for (const FaceRecord& r : enumerate_faces(poly)) {
    if (r.dim == poly.affine_dim()) continue;
    const Face F = face_from_mask(poly, r.mask);
    CHECK(std_form_inner_bound(poly, F) == doctest::Approx(facial_lower_bound_inner(poly, F)).epsilon(1e-12));
  }
  CHECK(sigma_profile(poly).size() == 4);
}

TEST_CASE("distance ordering, zero law and vertex law") {
  std::mt19937_64 rng(6);
  for (const char* name : {"simplex3", "box2", "trunc3"}) {
    const Polytope poly = named_polytope(name);
    for (int k = 0; k < 100; ++k) {
      const Vec x = sample_point(poly, rng), y = sample_point(poly, rng);
      const double r = radial_distance(poly, y, x), v = vertex_distance(poly, y, x), f = face_distance(poly, y, x);
      CHECK(f <= v + 1e-9);
      CHECK(v <= r + 1e-9);
      CHECK(r <= 1.0 + 1e-9);
      CHECK((f > 0.0) == ((y - x).norm() > 0.0));
      CHECK(radial_distance(poly, x, x) == 0.0);
    }
    for (const Vec& y : poly.vertices()) CHECK(radial_distance(poly, y, poly.centroid()) == 1.0);
  }
}

TEST_CASE("radial distance: frozen values") {
  const Polytope box = Polytope::unit_box(2);
  // From the center, the ray through (0.75, 0.5) exits at (1, 0.5).
  CHECK(radial_distance(box, Vec{{0.75, 0.5}}, Vec{{0.5, 0.5}}) == doctest::Approx(0.5));
  CHECK(distance_to_relative_boundary(box, {Vec{{0.25, 0.5}}}) == doctest::Approx(0.25));
}

TEST_CASE("vertex distance takes the worst support") {
  const Polytope box = Polytope::unit_box(2);
  // Support {(1,0),(0,1)}: u must stay on that diagonal, so y - x = (v - u) needs the full step.
  CHECK(vertex_distance(box, Vec{{0.0, 0.0}}, Vec{{0.5, 0.5}}) == doctest::Approx(1.0));
  // Along a coordinate the support {(0,0),(1,1)} is no worse than the radial value.
  CHECK(vertex_distance(box, Vec{{0.25, 0.5}}, Vec{{0.5, 0.5}}) <= 0.5 + 1e-12);
  CHECK(face_distance(box, Vec{{0.0, 0.0}}, Vec{{0.5, 0.5}}) == doctest::Approx(0.5));
}

TEST_CASE("error-bound derivation") {
  const Polytope poly = Polytope::unit_box(2);
  const OptimalSet center{{Vec{{0.5, 0.5}}}};
  const ErrorBoundCert radial = derive_error_bound(HolderCert{2.0, 0.5}, poly, BoundMode::Radial, center);
  CHECK(radial.certified);
  CHECK(radial.factor == doctest::Approx(0.5));

  const OptimalSet corner{{Vec{{0.0, 0.0}}}};
  CHECK_FALSE(derive_error_bound(HolderCert{2.0, 0.5}, poly, BoundMode::Radial, corner).certified);
  const ErrorBoundCert face = derive_error_bound(HolderCert{2.0, 0.5}, poly, BoundMode::Face, corner);
  CHECK(face.certified);
  CHECK(face.factor > 0.0);
}
