#pragma once

#include "polyfw/objectives.hpp"
#include "polyfw/polytope.hpp"
#include "polyfw/solvers.hpp"

#include <string>
#include <vector>

namespace polyfw {

enum class DistanceKind { Radial, Vertex, Face };

const char* to_string(DistanceKind kind);

// 1/t* with t* the exit parameter of the ray from x through y.
double radial_distance(const Polytope& poly, const Vec& y, const Vec& x);
// Max over supports S of x of min{g : y - x = g(v - u), v in C, u in conv(S)}.
// Only affinely independent supports are tried: every minimal support is one,
// and the inner value can only shrink when S grows. Needs <= 16 vertices.
double vertex_distance(const Polytope& poly, const Vec& y, const Vec& x);
// min{g : y - x = g(v - u), v in C, u in F(x)}.
double face_distance(const Polytope& poly, const Vec& y, const Vec& x);
double distance(const Polytope& poly, DistanceKind kind, const Vec& y, const Vec& x);
// min over the listed points of X*.
double distance_from_set(const Polytope& poly, DistanceKind kind, const OptimalSet& xstar, const Vec& x);

// Exact Euclidean facial distances (face lattice + min-norm-point).
// Phi(F,C) = min over faces G of F, G != C, of dist(G, conv(V \ G)).
double inner_facial_distance(const Polytope& poly, const Face& F);
// PhiBar(F,C) = min over G in faces(F), H in faces(C), G ∩ H = ∅, of dist(G, H).
double outer_facial_distance(const Polytope& poly, const Face& F);

// sigma_i = min over vertices with positive slack on row i of that slack.
Vec sigma_profile(const Polytope& poly);

// Maximal linearly independent subsets of the rows D_binding.
std::vector<std::vector<int>> independent_row_sets(const Polytope& poly, const std::vector<int>& binding);

// dist(F, conv(V \ F)) >= max over I of 1/||sum_I d_i/sigma_i||_*   (F != C)
double facial_lower_bound_inner(const Polytope& poly, const Face& F, Norm norm = Norm::L2);
// dist(F, G) lower bound for disjoint faces F, G.
double facial_lower_bound_outer(const Polytope& poly, const Face& F, const Face& G, Norm norm = Norm::L2);
// Phi(F,C) >= min over faces G of F, G != C, of the inner bound for G.
double inner_facial_lower_bound(const Polytope& poly, const Face& F, Norm norm = Norm::L2);
// PhiBar(F,C) >= min over G in faces(F), H disjoint, of the outer bound for (G,H).
double outer_facial_lower_bound(const Polytope& poly, const Face& F, Norm norm = Norm::L2);
// Standard form: Phi(F,C) >= 1/||sigma^-1_{I_F}||_* and
// PhiBar(F,C) >= max{1/||sigma^-1_{I_F}||_*, 1/||sigma^-1_{I_F^c}||_*}.
double std_form_inner_bound(const Polytope& poly, const Face& F, Norm norm = Norm::L2);
double std_form_outer_bound(const Polytope& poly, const Face& F, Norm norm = Norm::L2);

// min over points of X* of the distance to the relative boundary within aff(C).
double distance_to_relative_boundary(const Polytope& poly, const std::vector<Vec>& points);

enum class BoundMode { Radial, Vertex, Face, SimplexCard };

const char* to_string(BoundMode mode);

struct ErrorBoundCert {
  double mu = 0.0;
  double theta = 0.5;
  BoundMode mode = BoundMode::Radial;
  double factor = 0.0;     // geometric factor (dist to relbnd, Phi, PhiBar, or mu~/mu)
  bool certified = false;  // false when the geometric factor is zero
  bool exact = true;       // false when Phi/PhiBar were replaced by lower bounds
  std::string note;
};

ErrorBoundCert derive_error_bound(const HolderCert& cert, const Polytope& poly, BoundMode mode,
                                  const OptimalSet& xstar);

struct ThetaFit {
  double mu = 0.0;
  double theta = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

// Fit log d(X*, x_t) = theta log(f(x_t) - f*) + b over the stored iterates;
// mu = exp(-b/theta).
ThetaFit estimate_theta(const RunTrace& trace, const Polytope& poly, const OptimalSet& xstar, DistanceKind kind);

}  // namespace polyfw
