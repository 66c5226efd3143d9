#pragma once

#include "polyfw/polytope.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polyfw {

// Hölderian error bound: ((f(x) - f*)/mu)^theta >= dist(x, X*).
struct HolderCert {
  double mu = 0.0;
  double theta = 0.5;
};

// X* = conv(points).
struct OptimalSet {
  std::vector<Vec> points;
};

struct Objective {
  std::string name;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::optional<Mat> hessian;        // set when the Hessian is constant
  std::optional<double> smoothness;  // Euclidean Lipschitz constant of the gradient on C
  std::optional<double> f_star;
  std::optional<OptimalSet> optimal_set;
  std::optional<HolderCert> holder;
};

// f(x) = 0.5 x'Qx + c'x.
Objective quadratic(const Mat& Q, const Vec& c);
// Same, with f*, X* and (for positive definite Q) the Hölder certificate
// mu = lambda_min(Q)/2, theta = 1/2 attached for this polytope.
Objective quadratic(const Mat& Q, const Vec& c, const Polytope& poly);

// f(x) = ||x - center||_2^p, p >= 2.
Objective power_distance(const Vec& center, double p);
// Same, with f*, X*, smoothness on C and, when the center lies in C, the
// exact certificate mu = 1, theta = 1/p.
Objective power_distance(const Vec& center, double p, const Polytope& poly);

Objective linear(const Vec& c, const Polytope& poly);

struct QuadraticOptimum {
  double f_star = 0.0;
  std::vector<Vec> points;  // near-optimal candidates; their hull lies in X*
};

// Exact minimization over C by solving the KKT system on every face.
QuadraticOptimum minimize_quadratic_over(const Mat& Q, const Vec& c, const Polytope& poly);

double largest_eigenvalue(const Mat& Q);

// L = L_smooth * diam(C)^2.
double curvature_constant(const Objective& f, const Polytope& poly);
// Exact extended curvature of a constant-Hessian objective: max of d'Qd over
// d in C - C, attained at a difference of two vertices.
double exact_curvature(const Objective& f, const Polytope& poly);

struct CurvatureAudit {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;  // max of f(x+ed) - f(x) - e<g,d> - L e^2/2
};

CurvatureAudit audit_curvature(const Objective& f, const Polytope& poly, double L, std::size_t samples,
                               std::uint64_t seed = 0);

struct OracleAudit {
  std::size_t samples = 0;
  double worst = 0.0;
  bool passed = true;
};

// Central differences with step 1e-6; relative error against max(1, ||g||).
OracleAudit audit_gradient(const Objective& f, const Polytope& poly, std::size_t samples, std::uint64_t seed = 0);
// Midpoint convexity on random segments.
OracleAudit audit_convexity(const Objective& f, const Polytope& poly, std::size_t samples, std::uint64_t seed = 0);
// ((f - f*)/mu)^theta >= dist(x, X*) - 1e-8 on sampled points.
OracleAudit audit_holder(const Objective& f, const Polytope& poly, std::size_t samples, std::uint64_t seed = 0);

// Euclidean distance from x to conv(X*).
double distance_to_set(const Vec& x, const OptimalSet& set);

}  // namespace polyfw
