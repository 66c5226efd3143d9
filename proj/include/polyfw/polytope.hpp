#pragma once

#include "polyfw/core.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace polyfw {

enum class PolytopeKind { Simplex, Box, L1Ball, VRep, StdForm, HForm };

const char* to_string(PolytopeKind kind);

// A face F = C ∩ {x : D_I x = e_I}. `binding` indexes rows of D (for the
// standard form and the simplex, rows of D are coordinates).
struct Face {
  std::vector<int> binding;
  int dim = 0;
};

struct PolytopeLimits {
  double bind_tol = 1e-9;
  std::size_t max_vertices = 64;
  std::size_t max_faces = 4096;
};

// Every polytope carries an H-description {x : Ax = b, Dx >= e}. Structured
// families (simplex, box, l1 ball) answer the LMO in closed form; the others
// go through the enumerated vertex list. Values are immutable and cheap to
// copy, so they can be shared across concurrent solver runs.
class Polytope {
 public:
  // Unit simplex {x >= 0, sum x = 1} in standard form.
  static Polytope simplex(int n, PolytopeLimits limits = {});
  static Polytope box(const Vec& lower, const Vec& upper, PolytopeLimits limits = {});
  static Polytope unit_box(int n, PolytopeLimits limits = {});
  // Cross-polytope conv{±r e_i}; its H-form has 2^n rows, so n <= 12.
  static Polytope l1_ball(int n, double radius, PolytopeLimits limits = {});
  static Polytope from_vertices(const std::vector<Vec>& points, PolytopeLimits limits = {});
  // {x >= 0, Ax = b}
  static Polytope standard_form(const Mat& A, const Vec& b, PolytopeLimits limits = {});
  static Polytope h_form(const Mat& A, const Vec& b, const Mat& D, const Vec& e,
                         PolytopeLimits limits = {});

  PolytopeKind kind() const;
  int ambient_dim() const;
  int affine_dim() const;
  // rank(A); the m of the standard-form results.
  int num_equalities() const;
  const Mat& A() const;
  const Vec& b() const;
  const Mat& D() const;
  const Vec& e() const;
  const PolytopeLimits& limits() const;
  const Vec& box_lower() const;
  const Vec& box_upper() const;
  double l1_radius() const;

  bool is_standard_form() const;
  // Standard form with every vertex in {0,1}^n.
  bool is_simplex_like() const;

  Vec slacks(const Vec& x) const;
  bool contains(const Vec& x, double tol = 1e-8) const;

  Vec lmo(const Vec& g) const;
  // Minimizer of <g, .> over the vertices of the minimal face F(x).
  Vec in_face_lmo(const Vec& x, const Vec& g) const;
  Vec in_face_lmo(const Vec& x, const Vec& g, double bind_tol) const;
  // max{eta >= 0 : x + eta d in C}; +inf when d is (numerically) zero.
  double max_step(const Vec& x, const Vec& d) const;
  Face minimal_face(const Vec& x) const;
  Face minimal_face(const Vec& x, double bind_tol) const;
  int face_dim(const std::vector<int>& binding) const;

  bool has_vertices() const;
  // Throws CapExceeded when the vertex count is over the configured cap or the
  // enumeration was skipped.
  const std::vector<Vec>& vertices() const;
  // Indices (into vertices()) of the vertices lying on the face.
  std::vector<int> face_vertices(const Face& face) const;
  bool is_vertex(const Vec& x) const;

  double diameter() const;
  Vec centroid() const;
  std::string describe() const;

  struct Impl;  // defined in polytope.cpp

 private:
  explicit Polytope(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Face lattice entry: vertex membership as a bitmask over vertices().
struct FaceRecord {
  std::uint64_t mask = 0;
  std::vector<int> binding;
  int dim = 0;
};

// All nonempty faces, C itself included, in breadth-first order from C.
std::vector<FaceRecord> enumerate_faces(const Polytope& poly);

// Mask of vertices on the face.
std::uint64_t face_mask(const Polytope& poly, const Face& face);
Face face_from_mask(const Polytope& poly, std::uint64_t mask);

// Columns are the vertices selected by mask.
Mat vertex_matrix(const Polytope& poly, std::uint64_t mask);

// Random feasible point; mixes vertices, sparse combinations (boundary
// points) and dense combinations (relative interior).
Vec sample_point(const Polytope& poly, std::mt19937_64& rng);

}  // namespace polyfw
