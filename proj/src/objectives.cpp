#include "polyfw/objectives.hpp"

#include "polyfw/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace polyfw {

Objective quadratic(const Mat& Q, const Vec& c) {
  if (Q.rows() != Q.cols() || Q.rows() != c.size()) throw InputError("quadratic: Q must be n x n and c length n");
  if (!Q.allFinite() || !c.allFinite()) throw InputError("quadratic: non-finite data");
  if ((Q - Q.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * std::max(1.0, Q.lpNorm<Eigen::Infinity>())) {
    throw InputError("quadratic: Q is not symmetric");
  }
  Objective f;
  f.name = "quadratic";
  f.value = [Q, c](const Vec& x) { return 0.5 * x.dot(Q * x) + c.dot(x); };
  f.gradient = [Q, c](const Vec& x) -> Vec { return Q * x + c; };
  f.hessian = Q;
  f.smoothness = largest_eigenvalue(Q);
  return f;
}

Objective quadratic(const Mat& Q, const Vec& c, const Polytope& poly) {
  if (c.size() != poly.ambient_dim()) throw InputError("quadratic: dimension differs from the polytope");
  Objective f = quadratic(Q, c);
  const QuadraticOptimum opt = minimize_quadratic_over(Q, c, poly);
  f.f_star = opt.f_star;
  f.optimal_set = OptimalSet{opt.points};
  Eigen::SelfAdjointEigenSolver<Mat> eig(Q);
  const double lmin = eig.eigenvalues().minCoeff();
  if (lmin > 1e-12) {
    f.optimal_set->points.resize(1);
    f.holder = HolderCert{0.5 * lmin, 0.5};
  }
  return f;
}

Objective power_distance(const Vec& center, double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw InputError("power_distance: p must be >= 2");
  if (!center.allFinite()) throw InputError("power_distance: non-finite center");
  Objective f;
  f.name = "powdist";
  f.value = [center, p](const Vec& x) { return std::pow((x - center).norm(), p); };
  f.gradient = [center, p](const Vec& x) -> Vec {
    const Vec r = x - center;
    const double nr = r.norm();
    if (nr == 0.0) return Vec::Zero(r.size());
    return p * std::pow(nr, p - 2.0) * r;
  };
  if (p == 2.0) f.hessian = Mat(2.0 * Mat::Identity(center.size(), center.size()));
  return f;
}

Objective power_distance(const Vec& center, double p, const Polytope& poly) {
  if (center.size() != poly.ambient_dim()) throw InputError("power_distance: dimension differs from the polytope");
  Objective f = power_distance(center, p);
  double R = 0.0;
  if (poly.has_vertices()) {
    for (const Vec& v : poly.vertices()) R = std::max(R, (v - center).norm());
  } else {
    R = (poly.centroid() - center).norm() + poly.diameter();
  }
  // Hessian p|r|^{p-2} I + p(p-2)|r|^{p-4} rr' has top eigenvalue p(p-1)|r|^{p-2}.
  f.smoothness = p * (p - 1.0) * std::pow(R, p - 2.0);

  if (poly.contains(center, 1e-12)) {
    f.f_star = 0.0;
    f.optimal_set = OptimalSet{{center}};
    // f - f* = |x - center|^p, so the bound holds with equality at mu = 1.
    f.holder = HolderCert{1.0, 1.0 / p};
  } else {
    const QuadraticOptimum proj =
        minimize_quadratic_over(2.0 * Mat::Identity(center.size(), center.size()), -2.0 * center, poly);
    f.optimal_set = OptimalSet{{proj.points.front()}};
    f.f_star = std::pow((proj.points.front() - center).norm(), p);
  }
  return f;
}

Objective linear(const Vec& c, const Polytope& poly) {
  Objective f = quadratic(Mat::Zero(c.size(), c.size()), c, poly);
  f.name = "linear";
  f.smoothness = 0.0;
  return f;
}

QuadraticOptimum minimize_quadratic_over(const Mat& Q, const Vec& c, const Polytope& poly) {
  const int n = poly.ambient_dim();
  const auto faces = enumerate_faces(poly);
  const double scale = std::max(1.0, Q.lpNorm<Eigen::Infinity>() + c.lpNorm<Eigen::Infinity>());
  std::vector<std::pair<double, Vec>> cands;
  for (const FaceRecord& face : faces) {
    const Eigen::Index m = poly.A().rows() + static_cast<Eigen::Index>(face.binding.size());
    Mat E(m, n);
    Vec r(m);
    E.topRows(poly.A().rows()) = poly.A();
    r.head(poly.A().rows()) = poly.b();
    for (std::size_t j = 0; j < face.binding.size(); ++j) {
      E.row(poly.A().rows() + j) = poly.D().row(face.binding[j]);
      r[poly.A().rows() + j] = poly.e()[face.binding[j]];
    }
    Mat K = Mat::Zero(n + m, n + m);
    K.topLeftCorner(n, n) = Q;
    K.topRightCorner(n, m) = E.transpose();
    K.bottomLeftCorner(m, n) = E;
    Vec rhs(n + m);
    rhs << -c, r;
    const Vec sol = K.completeOrthogonalDecomposition().solve(rhs);
    if ((K * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-9 * scale) continue;  // unbounded on this face
    const Vec x = sol.head(n);
    if (!poly.contains(x, 1e-9)) continue;
    cands.emplace_back(0.5 * x.dot(Q * x) + c.dot(x), x);
  }
  if (cands.empty()) throw Error("minimize_quadratic_over: no KKT point found");
  QuadraticOptimum out;
  out.f_star = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
                 return a.first < b.first;
               })->first;
  const double tol = 1e-10 * std::max(1.0, std::abs(out.f_star));
  for (const auto& [val, x] : cands) {
    if (val > out.f_star + tol) continue;
    bool dup = false;
    for (const Vec& p : out.points) dup = dup || (p - x).norm() < 1e-9;
    if (!dup) out.points.push_back(x);
  }
  // Candidates on the lowest-dimensional faces come last in BFS order; put
  // the best value first so callers taking front() get the minimizer.
  std::stable_sort(out.points.begin(), out.points.end(), [&](const Vec& a, const Vec& b) {
    return 0.5 * a.dot(Q * a) + c.dot(a) < 0.5 * b.dot(Q * b) + c.dot(b);
  });
  return out;
}

double largest_eigenvalue(const Mat& Q) {
  const Eigen::Index n = Q.rows();
  if (n == 0) return 0.0;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(1.0 + 3.0 * static_cast<double>(i));
  v.normalize();
  double lambda = v.dot(Q * v);
  for (int it = 0; it < 20000; ++it) {
    Vec w = Q * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = w.dot(Q * w);
    const bool settled = std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next)) && (w - v).norm() < 1e-9;
    v = w;
    lambda = next;
    if (settled) break;
  }
  return lambda;
}

double curvature_constant(const Objective& f, const Polytope& poly) {
  if (!f.smoothness) throw InputError("curvature_constant: smoothness constant unknown for '" + f.name + "'");
  const double diam = poly.diameter();
  return *f.smoothness * diam * diam;
}

double exact_curvature(const Objective& f, const Polytope& poly) {
  if (!f.hessian) throw InputError("exact_curvature: '" + f.name + "' has no constant Hessian");
  const auto& V = poly.vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < V.size(); ++i) {
    for (std::size_t j = i + 1; j < V.size(); ++j) {
      const Vec d = V[i] - V[j];
      best = std::max(best, d.dot(*f.hessian * d));
    }
  }
  return best;
}

CurvatureAudit audit_curvature(const Objective& f, const Polytope& poly, double L, std::size_t samples,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  CurvatureAudit out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  while (out.samples < samples) {
    const Vec x = sample_point(poly, rng);
    const Vec d = sample_point(poly, rng) - sample_point(poly, rng);
    if (d.norm() < 1e-9) continue;
    double eta_max = poly.max_step(x, d);
    if (!std::isfinite(eta_max)) continue;
    const double u = unif(rng);
    const double eta = u < 0.25 ? eta_max : eta_max * unif(rng);
    const double excess = f.value(x + eta * d) - f.value(x) - eta * f.gradient(x).dot(d) - 0.5 * L * eta * eta;
    ++out.samples;
    out.max_violation = std::max(out.max_violation, excess);
    if (excess > 1e-9) ++out.violations;
  }
  return out;
}

OracleAudit audit_gradient(const Objective& f, const Polytope& poly, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleAudit out;
  const double h = 1e-6;
  for (; out.samples < samples; ++out.samples) {
    const Vec x = sample_point(poly, rng);
    const Vec g = f.gradient(x);
    Vec fd(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      fd[i] = (f.value(xp) - f.value(xm)) / (2 * h);
    }
    const double err = (fd - g).norm() / std::max(1.0, g.norm());
    out.worst = std::max(out.worst, err);
  }
  out.passed = out.worst <= 1e-5;
  return out;
}

OracleAudit audit_convexity(const Objective& f, const Polytope& poly, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleAudit out;
  for (; out.samples < samples; ++out.samples) {
    const Vec x = sample_point(poly, rng), y = sample_point(poly, rng);
    const double fx = f.value(x), fy = f.value(y);
    const double excess = f.value(0.5 * (x + y)) - 0.5 * (fx + fy);
    out.worst = std::max(out.worst, excess);
  }
  out.passed = out.worst <= 1e-12;
  return out;
}

double distance_to_set(const Vec& x, const OptimalSet& set) {
  if (set.points.empty()) throw InputError("distance_to_set: empty set");
  if (set.points.size() == 1) return (x - set.points[0]).norm();
  Mat P(x.size(), static_cast<Eigen::Index>(set.points.size()));
  for (std::size_t i = 0; i < set.points.size(); ++i) P.col(i) = set.points[i] - x;
  return min_norm_point(P).norm;
}

OracleAudit audit_holder(const Objective& f, const Polytope& poly, std::size_t samples, std::uint64_t seed) {
  if (!f.holder || !f.f_star || !f.optimal_set) throw InputError("audit_holder: certificate, f* or X* missing");
  std::mt19937_64 rng(seed);
  OracleAudit out;
  for (; out.samples < samples; ++out.samples) {
    const Vec x = sample_point(poly, rng);
    const double gap = std::max(0.0, f.value(x) - *f.f_star);
    const double lhs = std::pow(gap / f.holder->mu, f.holder->theta);
    const double excess = distance_to_set(x, *f.optimal_set) - lhs;
    out.worst = std::max(out.worst, excess);
  }
  out.passed = out.worst <= 1e-8;
  return out;
}

}  // namespace polyfw
