#include "polyfw/geometry.hpp"

#include "polyfw/lp.hpp"
#include "polyfw/min_norm_point.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace polyfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kSupportGate = 16;
constexpr double kPositivity = 1e-10;

void require_member(const Polytope& poly, const Vec& x, const char* what) {
  if (x.size() != poly.ambient_dim()) throw InputError(std::string(what) + " has the wrong dimension");
  if (!x.allFinite()) throw InputError(std::string(what) + " is not finite");
  if (!poly.contains(x)) throw InfeasibleError(std::string(what) + " " + format_vec(x) + " is not in the polytope");
}

bool same_point(const Vec& y, const Vec& x) {
  const double scale = std::max({1.0, y.lpNorm<Eigen::Infinity>(), x.lpNorm<Eigen::Infinity>()});
  return (y - x).lpNorm<Eigen::Infinity>() <= 1e-14 * scale;
}

// D(y - x) with x snapped onto F: rows binding on F use the slack of y,
// clamped at 0. Otherwise an x within bind_tol of a facet, or a y a few ulps
// outside it, forces w = 0 in the LPs below.
Vec snapped_direction(const Polytope& poly, const Face& F, const Vec& y, const Vec& x) {
  Vec Dd = poly.D() * (y - x);
  for (int i : F.binding) Dd[i] = std::max(0.0, poly.D().row(i).dot(y) - poly.e()[i]);
  return Dd;
}

// max{w : u in conv(columns of P), u + w*delta in C}, with Dd = D delta.
// Returns 1/w*, the smallest g with delta = g(v - u).
double inner_gamma(const Polytope& poly, const Mat& P, const Vec& Dd) {
  const Eigen::Index k = P.cols();
  LinearProgram lp(k + 1);
  lp.c = Vec::Zero(k + 1);
  lp.c[k] = -1.0;
  const Mat& D = poly.D();
  const Mat DP = D * P;
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    Vec row(k + 1);
    row.head(k) = DP.row(i).transpose();
    row[k] = Dd[i];
    lp.add_ge(row, poly.e()[i]);
  }
  Vec ones = Vec::Zero(k + 1);
  ones.head(k).setOnes();
  lp.add_eq(ones, 1.0);
  const LpResult res = solve_lp(lp);
  // Unbounded only when y and x agree up to bind_tol after snapping.
  if (res.status == LpStatus::Unbounded) return 0.0;
  if (res.status != LpStatus::Optimal) throw InvariantViolation("distance LP did not reach an optimum");
  const double w = res.z[k];
  if (w <= 0.0) throw InvariantViolation("distance LP returned a nonpositive scale");
  return std::min(1.0, 1.0 / w);
}

// Same LP with u ranging over the H-description of the face (free variables
// split as u+ - u-).
double inner_gamma_hform(const Polytope& poly, const Face& face, const Vec& Dd) {
  const int n = poly.ambient_dim();
  LinearProgram lp(2 * n + 1);
  lp.c = Vec::Zero(2 * n + 1);
  lp.c[2 * n] = -1.0;
  auto split = [n](const Eigen::RowVectorXd& a) {
    Vec row = Vec::Zero(2 * n + 1);
    row.head(n) = a.transpose();
    row.segment(n, n) = -a.transpose();
    return row;
  };
  for (Eigen::Index i = 0; i < poly.A().rows(); ++i) lp.add_eq(split(poly.A().row(i)), poly.b()[i]);
  for (int i : face.binding) lp.add_eq(split(poly.D().row(i)), poly.e()[i]);
  for (Eigen::Index i = 0; i < poly.D().rows(); ++i) {
    Vec row = split(poly.D().row(i));
    lp.add_ge(row, poly.e()[i]);
    row[2 * n] = Dd[i];
    lp.add_ge(row, poly.e()[i]);
  }
  const LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Unbounded) return 0.0;
  if (res.status != LpStatus::Optimal) throw InvariantViolation("face distance LP did not reach an optimum");
  const double w = res.z[2 * n];
  if (w <= 0.0) throw InvariantViolation("face distance LP returned a nonpositive scale");
  return std::min(1.0, 1.0 / w);
}

std::uint64_t full_mask(const Polytope& poly) {
  const std::size_t nv = poly.vertices().size();
  return nv >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nv) - 1;
}

// Rows tight on all of F. Without a vertex list the given rows are trusted.
std::vector<int> closed_binding(const Polytope& poly, const Face& F) {
  if (poly.has_vertices()) {
    const std::uint64_t mask = face_mask(poly, F);
    if (mask == 0) throw InputError("face is empty");
    return face_from_mask(poly, mask).binding;
  }
  std::vector<int> b = F.binding;
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

Vec sigma_or_ones(const Polytope& poly) {
  if (poly.kind() == PolytopeKind::Simplex) return Vec::Ones(poly.D().rows());
  return sigma_profile(poly);
}

// Faces H of C disjoint from G and maximal with that property.
std::vector<const FaceRecord*> maximal_disjoint(const std::vector<FaceRecord>& faces, std::uint64_t g) {
  std::vector<const FaceRecord*> cand;
  for (const FaceRecord& h : faces) {
    if ((h.mask & g) == 0) cand.push_back(&h);
  }
  std::vector<const FaceRecord*> out;
  for (const FaceRecord* h : cand) {
    bool dominated = false;
    for (const FaceRecord* o : cand) {
      if (o != h && (h->mask & ~o->mask) == 0 && o->mask != h->mask) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(h);
  }
  return out;
}

std::vector<const FaceRecord*> faces_within(const std::vector<FaceRecord>& faces, std::uint64_t f) {
  std::vector<const FaceRecord*> out;
  for (const FaceRecord& g : faces) {
    if ((g.mask & ~f) == 0) out.push_back(&g);
  }
  return out;
}

Vec centroid_of(const std::vector<Vec>& points) {
  if (points.empty()) throw InputError("X* is empty");
  Vec c = Vec::Zero(points.front().size());
  for (const Vec& p : points) c += p;
  return c / static_cast<double>(points.size());
}

}  // namespace

const char* to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Radial: return "radial";
    case DistanceKind::Vertex: return "vertex";
    case DistanceKind::Face: return "face";
  }
  return "?";
}

const char* to_string(BoundMode mode) {
  switch (mode) {
    case BoundMode::Radial: return "radial";
    case BoundMode::Vertex: return "vertex";
    case BoundMode::Face: return "face";
    case BoundMode::SimplexCard: return "simplex-card";
  }
  return "?";
}

double radial_distance(const Polytope& poly, const Vec& y, const Vec& x) {
  require_member(poly, y, "y");
  require_member(poly, x, "x");
  if (same_point(y, x)) return 0.0;
  auto snap = [](double s) { return s <= 1e-12 ? 0.0 : s; };
  const Vec sx = poly.slacks(x), sy = poly.slacks(y);
  double t_star = kInf;
  for (Eigen::Index i = 0; i < sx.size(); ++i) {
    const double a = snap(sx[i]), b = snap(sy[i]);
    const double drop = a - b;
    if (drop > 1e-14 * std::max(1.0, a)) t_star = std::min(t_star, a / drop);
  }
  t_star = std::max(t_star, 1.0);
  return 1.0 / t_star;
}

double vertex_distance(const Polytope& poly, const Vec& y, const Vec& x) {
  require_member(poly, y, "y");
  require_member(poly, x, "x");
  if (same_point(y, x)) return 0.0;
  const auto& verts = poly.vertices();
  // Any S with x in relint conv(S) lies in F(x).
  const Face F = poly.minimal_face(x);
  const std::vector<int> fv = poly.face_vertices(F);
  if (fv.size() > kSupportGate) {
    throw CapExceeded("vertex_distance: F(x) has " + std::to_string(fv.size()) + " vertices, gate is 16");
  }
  const int k = static_cast<int>(fv.size());
  const int max_size = std::min(k, poly.affine_dim() + 1);
  const int n = poly.ambient_dim();
  const Vec Dd = snapped_direction(poly, F, y, x);
  const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());

  double best = 0.0;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << k); ++s) {
    const int sz = std::popcount(s);
    if (sz > max_size) continue;
    Mat S(n, sz);
    for (int j = 0, c = 0; j < k; ++j) {
      if ((s >> j) & 1) S.col(c++) = verts[fv[j]];
    }
    Mat M(n + 1, sz);
    M.topRows(n) = S;
    M.row(n).setOnes();
    Eigen::ColPivHouseholderQR<Mat> qr(M);
    if (qr.rank() < sz) continue;
    Vec rhs(n + 1);
    rhs.head(n) = x;
    rhs[n] = 1.0;
    const Vec lambda = qr.solve(rhs);
    if ((M * lambda - rhs).lpNorm<Eigen::Infinity>() > 1e-9 * scale) continue;
    if (lambda.minCoeff() <= kPositivity) continue;
    best = std::max(best, inner_gamma(poly, S, Dd));
    if (best >= 1.0) break;
  }
  return best;
}

double face_distance(const Polytope& poly, const Vec& y, const Vec& x) {
  require_member(poly, y, "y");
  require_member(poly, x, "x");
  if (same_point(y, x)) return 0.0;
  const Face F = poly.minimal_face(x);
  if (poly.has_vertices()) {
    const std::uint64_t mask = face_mask(poly, F);
    return inner_gamma(poly, vertex_matrix(poly, mask), snapped_direction(poly, F, y, x));
  }
  return inner_gamma_hform(poly, F, snapped_direction(poly, F, y, x));
}

double distance(const Polytope& poly, DistanceKind kind, const Vec& y, const Vec& x) {
  switch (kind) {
    case DistanceKind::Radial: return radial_distance(poly, y, x);
    case DistanceKind::Vertex: return vertex_distance(poly, y, x);
    case DistanceKind::Face: return face_distance(poly, y, x);
  }
  throw InputError("unknown distance kind");
}

double distance_from_set(const Polytope& poly, DistanceKind kind, const OptimalSet& xstar, const Vec& x) {
  if (xstar.points.empty()) throw InputError("X* is empty");
  double best = kInf;
  for (const Vec& p : xstar.points) best = std::min(best, distance(poly, kind, p, x));
  return best;
}

double inner_facial_distance(const Polytope& poly, const Face& F) {
  const std::uint64_t all = full_mask(poly);
  const std::uint64_t f = face_mask(poly, F);
  if (f == 0) throw InputError("face is empty");
  const auto faces = enumerate_faces(poly);
  double best = kInf;
  for (const FaceRecord* g : faces_within(faces, f)) {
    if (g->mask == all) continue;
    best = std::min(best, hull_distance(vertex_matrix(poly, g->mask), vertex_matrix(poly, all & ~g->mask)));
  }
  return best;
}

double outer_facial_distance(const Polytope& poly, const Face& F) {
  const std::uint64_t f = face_mask(poly, F);
  if (f == 0) throw InputError("face is empty");
  const auto faces = enumerate_faces(poly);
  double best = kInf;
  for (const FaceRecord* g : faces_within(faces, f)) {
    const Mat G = vertex_matrix(poly, g->mask);
    for (const FaceRecord* h : maximal_disjoint(faces, g->mask)) {
      best = std::min(best, hull_distance(G, vertex_matrix(poly, h->mask)));
    }
  }
  return best;
}

Vec sigma_profile(const Polytope& poly) {
  const auto& verts = poly.vertices();
  const double tol = poly.limits().bind_tol;
  Vec sigma(poly.D().rows());
  for (Eigen::Index i = 0; i < poly.D().rows(); ++i) {
    double best = kInf;
    for (const Vec& v : verts) {
      const double s = poly.D().row(i).dot(v) - poly.e()[i];
      if (s > tol) best = std::min(best, s);
    }
    if (!std::isfinite(best)) throw InputError("row " + std::to_string(i) + " has no vertex with positive slack");
    sigma[i] = best;
  }
  return sigma;
}

std::vector<std::vector<int>> independent_row_sets(const Polytope& poly, const std::vector<int>& binding) {
  const int m = static_cast<int>(binding.size());
  Mat Db(m, poly.ambient_dim());
  for (int j = 0; j < m; ++j) Db.row(j) = poly.D().row(binding[j]);
  const int r = m == 0 ? 0 : numeric_rank(Db);
  std::vector<std::vector<int>> out;
  if (r == 0) {
    out.emplace_back();
    return out;
  }
  double count = 1.0;
  for (int j = 0; j < r; ++j) count = count * (m - j) / (j + 1);
  if (count > 2e5) throw CapExceeded("too many candidate row subsets");

  std::vector<int> idx(r);
  for (int j = 0; j < r; ++j) idx[j] = j;
  while (true) {
    Mat sub(r, poly.ambient_dim());
    for (int j = 0; j < r; ++j) sub.row(j) = Db.row(idx[j]);
    if (numeric_rank(sub) == r) {
      std::vector<int> rows(r);
      for (int j = 0; j < r; ++j) rows[j] = binding[idx[j]];
      out.push_back(std::move(rows));
    }
    int j = r - 1;
    while (j >= 0 && idx[j] == m - r + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int l = j + 1; l < r; ++l) idx[l] = idx[l - 1] + 1;
  }
  return out;
}

namespace {

double weighted_bound(const Polytope& poly, const Vec& sigma, const std::vector<int>& rows,
                      const std::vector<int>& exclude, Norm norm) {
  Vec s = Vec::Zero(poly.ambient_dim());
  bool any = false;
  for (int i : rows) {
    if (std::binary_search(exclude.begin(), exclude.end(), i)) continue;
    s += poly.D().row(i).transpose() / sigma[i];
    any = true;
  }
  const double dn = any ? dual_norm_of(s, norm) : 0.0;
  return dn > 0.0 ? 1.0 / dn : 0.0;
}

double inner_bound_rows(const Polytope& poly, const Vec& sigma, const std::vector<int>& binding, Norm norm) {
  if (binding.empty()) throw InputError("facial lower bound needs a proper face (F = C has no binding rows)");
  double best = 0.0;
  for (const auto& I : independent_row_sets(poly, binding)) {
    best = std::max(best, weighted_bound(poly, sigma, I, {}, norm));
  }
  return best;
}

double outer_bound_rows(const Polytope& poly, const Vec& sigma, const std::vector<int>& bf,
                        const std::vector<int>& bg, Norm norm) {
  double best = 0.0;
  for (const auto& I : independent_row_sets(poly, bf)) best = std::max(best, weighted_bound(poly, sigma, I, bg, norm));
  for (const auto& I : independent_row_sets(poly, bg)) best = std::max(best, weighted_bound(poly, sigma, I, bf, norm));
  return best;
}

}  // namespace

double facial_lower_bound_inner(const Polytope& poly, const Face& F, Norm norm) {
  return inner_bound_rows(poly, sigma_or_ones(poly), closed_binding(poly, F), norm);
}

double facial_lower_bound_outer(const Polytope& poly, const Face& F, const Face& G, Norm norm) {
  if (poly.has_vertices() && (face_mask(poly, F) & face_mask(poly, G)) != 0) {
    throw InputError("outer lower bound needs disjoint faces");
  }
  return outer_bound_rows(poly, sigma_or_ones(poly), closed_binding(poly, F), closed_binding(poly, G), norm);
}

double inner_facial_lower_bound(const Polytope& poly, const Face& F, Norm norm) {
  const std::uint64_t all = full_mask(poly);
  const std::uint64_t f = face_mask(poly, F);
  const Vec sigma = sigma_or_ones(poly);
  const auto faces = enumerate_faces(poly);
  double best = kInf;
  for (const FaceRecord* g : faces_within(faces, f)) {
    if (g->mask == all) continue;
    best = std::min(best, inner_bound_rows(poly, sigma, g->binding, norm));
  }
  return best;
}

double outer_facial_lower_bound(const Polytope& poly, const Face& F, Norm norm) {
  const std::uint64_t f = face_mask(poly, F);
  const Vec sigma = sigma_or_ones(poly);
  const auto faces = enumerate_faces(poly);
  double best = kInf;
  for (const FaceRecord* g : faces_within(faces, f)) {
    for (const FaceRecord* h : maximal_disjoint(faces, g->mask)) {
      best = std::min(best, outer_bound_rows(poly, sigma, g->binding, h->binding, norm));
    }
  }
  return best;
}

namespace {

Vec std_form_sigma(const Polytope& poly) {
  if (!poly.is_standard_form()) throw InputError("standard-form bound needs a polytope {x >= 0, Ax = b}");
  if (poly.kind() == PolytopeKind::Simplex || poly.is_simplex_like()) return Vec::Ones(poly.ambient_dim());
  return sigma_profile(poly);
}

double inverse_norm_on(const Vec& sigma, const std::vector<bool>& select, Norm norm) {
  Vec s = Vec::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (select[i]) s[i] = 1.0 / sigma[i];
  }
  const double dn = dual_norm_of(s, norm);
  return dn > 0.0 ? 1.0 / dn : kInf;
}

}  // namespace

double std_form_inner_bound(const Polytope& poly, const Face& F, Norm norm) {
  const Vec sigma = std_form_sigma(poly);
  const std::vector<int> bind = closed_binding(poly, F);
  if (bind.empty()) throw InputError("standard-form bound needs a proper face (F = C)");
  std::vector<bool> in(sigma.size(), false);
  for (int i : bind) in[i] = true;
  return inverse_norm_on(sigma, in, norm);
}

double std_form_outer_bound(const Polytope& poly, const Face& F, Norm norm) {
  const Vec sigma = std_form_sigma(poly);
  const std::vector<int> bind = closed_binding(poly, F);
  if (bind.empty()) throw InputError("standard-form bound needs a proper face (F = C)");
  std::vector<bool> in(sigma.size(), false), out(sigma.size(), true);
  for (int i : bind) {
    in[i] = true;
    out[i] = false;
  }
  return std::max(inverse_norm_on(sigma, in, norm), inverse_norm_on(sigma, out, norm));
}

double distance_to_relative_boundary(const Polytope& poly, const std::vector<Vec>& points) {
  if (points.empty()) throw InputError("X* is empty");
  const int n = poly.ambient_dim();
  Mat P = Mat::Identity(n, n);
  if (poly.A().rows() > 0) {
    // Projector onto null(A).
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(poly.A());
    P -= cod.pseudoInverse() * poly.A();
  }
  double best = kInf;
  for (const Vec& x : points) {
    require_member(poly, x, "X* point");
    const Vec s = poly.slacks(x);
    for (Eigen::Index i = 0; i < poly.D().rows(); ++i) {
      const double pn = (P * poly.D().row(i).transpose()).norm();
      if (pn <= 1e-12) continue;
      best = std::min(best, std::max(0.0, s[i]) / pn);
    }
  }
  return best;
}

ErrorBoundCert derive_error_bound(const HolderCert& cert, const Polytope& poly, BoundMode mode,
                                  const OptimalSet& xstar) {
  if (!(cert.mu > 0.0) || !(cert.theta > 0.0) || cert.theta > 0.5) {
    throw InputError("Hölder certificate needs mu > 0 and theta in (0, 1/2]");
  }
  ErrorBoundCert out;
  out.theta = cert.theta;
  out.mode = mode;
  const double inv_theta = 1.0 / cert.theta;
  const Vec center = centroid_of(xstar.points);
  const Face fx = poly.minimal_face(center);

  switch (mode) {
    case BoundMode::Radial: {
      out.factor = distance_to_relative_boundary(poly, xstar.points);
      if (out.factor <= 1e-12) {
        out.factor = 0.0;
        out.note = "no certificate: X* touches the relative boundary";
        return out;
      }
      out.mu = cert.mu * std::pow(out.factor, inv_theta);
      break;
    }
    case BoundMode::Vertex:
    case BoundMode::Face: {
      const bool inner = mode == BoundMode::Vertex;
      try {
        out.factor = inner ? inner_facial_distance(poly, fx) : outer_facial_distance(poly, fx);
      } catch (const CapExceeded&) {
        out.exact = false;
        out.factor = inner ? std_form_inner_bound(poly, fx) : std_form_outer_bound(poly, fx);
        out.note = "facial distance replaced by its standard-form lower bound";
      }
      out.mu = cert.mu * std::pow(out.factor, inv_theta);
      break;
    }
    case BoundMode::SimplexCard: {
      if (!(poly.kind() == PolytopeKind::Simplex || poly.is_simplex_like())) {
        throw InputError("simplex-card bound needs a simplex-like polytope");
      }
      const int n = poly.ambient_dim();
      int card = 0;
      for (const Vec& p : xstar.points) {
        int c = 0;
        for (Eigen::Index i = 0; i < p.size(); ++i) c += p[i] > poly.limits().bind_tol;
        card = std::max(card, c);
      }
      const double expo = 1.0 / (2.0 * cert.theta);
      double mu = 0.0;
      if (card > 0) mu = std::max(mu, cert.mu / std::pow(card, expo));
      if (n - card > 0) mu = std::max(mu, cert.mu / std::pow(n - card, expo));
      out.mu = mu;
      out.factor = mu / cert.mu;
      break;
    }
  }
  out.certified = out.mu > 0.0;
  if (!out.certified && out.note.empty()) out.note = "no certificate: geometric factor is zero";
  return out;
}

ThetaFit estimate_theta(const RunTrace& trace, const Polytope& poly, const OptimalSet& xstar, DistanceKind kind) {
  if (trace.iterates.size() != trace.records.size()) throw InputError("estimate_theta needs stored iterates");
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const double h = trace.records[i].f_gap;
    if (std::isfinite(h) && h > 0.0) usable.push_back(i);
  }
  // Log-spaced subsample keeps the exact distance evaluations affordable.
  std::vector<std::size_t> picks;
  if (usable.size() <= 200) {
    picks = usable;
  } else {
    const double span = std::log(static_cast<double>(usable.size()));
    for (int j = 0; j < 200; ++j) {
      const auto k = static_cast<std::size_t>(std::exp(span * j / 199.0)) - 1;
      const std::size_t idx = usable[std::min(k, usable.size() - 1)];
      if (picks.empty() || picks.back() != idx) picks.push_back(idx);
    }
  }

  std::vector<double> lx, ly;
  for (std::size_t i : picks) {
    const double d = distance_from_set(poly, kind, xstar, trace.iterates[i]);
    if (!(d > 0.0)) continue;
    lx.push_back(std::log(trace.records[i].f_gap));
    ly.push_back(std::log(d));
  }
  if (lx.size() < 5) throw InputError("estimate_theta: fewer than 5 usable points");

  const double m = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 1e-12 * m || syy <= 1e-12 * m) throw InputError("estimate_theta: degenerate trace (no variation)");
  ThetaFit fit;
  fit.theta = sxy / sxx;
  const double intercept = my - fit.theta * mx;
  fit.mu = std::exp(-intercept / fit.theta);
  fit.r2 = sxy * sxy / (sxx * syy);
  fit.points = lx.size();
  return fit;
}

}  // namespace polyfw
