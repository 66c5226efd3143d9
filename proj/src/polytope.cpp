#include "polyfw/polytope.hpp"

#include "polyfw/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace polyfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxCombinations = 2'000'000;

double round12(double v) {
  const double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;  // no negative zeros
}

Vec canonical(const Vec& x) { return x.unaryExpr([](double v) { return round12(v); }); }

std::vector<long long> grid_key(const Vec& x, double step) {
  std::vector<long long> key(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) key[i] = std::llround(x[i] / step);
  return key;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

void sort_lex(std::vector<Vec>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
}

// Orthonormal basis of the column space of M (columns of the result).
Mat column_basis(const Mat& M, double tol = 1e-9) {
  if (M.cols() == 0) return Mat(M.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s[0] : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > tol * std::max(1.0, top)) ++r;
  }
  return svd.matrixU().leftCols(r);
}

// Orthonormal complement of the column space of M.
Mat complement_basis(const Mat& M, double tol = 1e-9) {
  if (M.cols() == 0) return Mat::Identity(M.rows(), M.rows());
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s[0] : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > tol * std::max(1.0, top)) ++r;
  }
  return svd.matrixU().rightCols(M.rows() - r);
}

// Vertices of {Ax = b, Dx >= e} by basis enumeration. Returns false when the
// number of candidate bases is too large to try.
bool basis_vertices(const Mat& A, const Vec& b, const Mat& D, const Vec& e, std::vector<Vec>& out) {
  const int n = static_cast<int>(A.cols() ? A.cols() : D.cols());
  const int r = numeric_rank(A);
  const int k = static_cast<int>(D.rows());
  const int need = n - r;
  out.clear();
  if (need < 0 || need > k) return true;
  if (binomial(k, need) > static_cast<double>(kMaxCombinations)) return false;

  std::map<std::vector<long long>, Vec> found;
  std::vector<int> idx(static_cast<std::size_t>(need));
  std::iota(idx.begin(), idx.end(), 0);
  Mat M(A.rows() + need, n);
  Vec rhs(A.rows() + need);
  M.topRows(A.rows()) = A;
  rhs.head(A.rows()) = b;
  do {
    for (int j = 0; j < need; ++j) {
      M.row(A.rows() + j) = D.row(idx[j]);
      rhs[A.rows() + j] = e[idx[j]];
    }
    Eigen::ColPivHouseholderQR<Mat> qr(M);
    qr.setThreshold(1e-10);
    if (qr.rank() < n) continue;
    Vec x = qr.solve(rhs);
    if ((M * x - rhs).lpNorm<Eigen::Infinity>() > 1e-9 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) continue;
    if (D.rows() > 0 && (D * x - e).minCoeff() < -1e-9 * (1.0 + x.lpNorm<Eigen::Infinity>())) continue;
    x = canonical(x);
    found.emplace(grid_key(x, 1e-9), x);
  } while (need > 0 && next_combination(idx, k));
  for (auto& kv : found) out.push_back(kv.second);
  sort_lex(out);
  return true;
}

}  // namespace

const char* to_string(PolytopeKind kind) {
  switch (kind) {
    case PolytopeKind::Simplex:
      return "simplex";
    case PolytopeKind::Box:
      return "box";
    case PolytopeKind::L1Ball:
      return "l1ball";
    case PolytopeKind::VRep:
      return "vrep";
    case PolytopeKind::StdForm:
      return "stdform";
    case PolytopeKind::HForm:
      return "hform";
  }
  return "?";
}

struct Polytope::Impl {
  PolytopeKind kind = PolytopeKind::HForm;
  int n = 0;
  Mat A, D;
  Vec b, e;
  int rank_A = 0;
  int aff_dim = 0;
  PolytopeLimits limits;
  std::vector<Vec> vertices;
  bool vertices_ok = false;
  std::string vertex_note;
  Vec lower, upper;
  double radius = 0.0;
  bool simplex_like = false;
};

Polytope::Polytope(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

// Shared tail of every constructor: vertex cache, affine dimension, checks.
void finish(Polytope::Impl& p, bool check_rows) {
  p.rank_A = numeric_rank(p.A);
  if (p.vertices.size() > p.limits.max_vertices) {
    p.vertex_note = "vertex count " + std::to_string(p.vertices.size()) + " exceeds cap " +
                    std::to_string(p.limits.max_vertices);
    p.vertices.clear();
    p.vertices_ok = false;
  }
  if (p.vertices_ok) {
    if (p.vertices.empty()) throw InputError("polytope is empty");
    Mat diff(p.n, static_cast<Eigen::Index>(p.vertices.size()));
    for (std::size_t i = 0; i < p.vertices.size(); ++i) diff.col(i) = p.vertices[i] - p.vertices[0];
    p.aff_dim = numeric_rank(diff);
    if (check_rows) {
      for (Eigen::Index i = 0; i < p.D.rows(); ++i) {
        bool tight = false, slack = false;
        for (const Vec& v : p.vertices) {
          const double s = p.D.row(i).dot(v) - p.e[i];
          if (std::abs(s) <= p.limits.bind_tol) tight = true;
          if (s > p.limits.bind_tol) slack = true;
        }
        if (!tight || !slack) {
          throw InputError("inequality row " + std::to_string(i) +
                           (tight ? " holds with equality on all of C" : " is never binding"));
        }
      }
    }
  } else {
    p.aff_dim = p.n - p.rank_A;
  }
}

std::shared_ptr<Polytope::Impl> make_impl(PolytopeKind kind, int n, PolytopeLimits limits) {
  auto p = std::make_shared<Polytope::Impl>();
  p->kind = kind;
  p->n = n;
  p->limits = limits;
  p->A = Mat(0, n);
  p->b = Vec(0);
  return p;
}

// Recession cone {d : Ad = 0, Dd >= 0} must be {0}. Checked coordinatewise
// with d = s - 1, s in [0,2].
void check_bounded(const Mat& A, const Mat& D, int n) {
  const Vec ones = Vec::Ones(n);
  for (int j = 0; j < n; ++j) {
    for (double sign : {1.0, -1.0}) {
      LinearProgram lp(n);
      lp.c[j] = -sign;
      for (Eigen::Index i = 0; i < A.rows(); ++i) lp.add_eq(A.row(i).transpose(), A.row(i).dot(ones));
      for (Eigen::Index i = 0; i < D.rows(); ++i) lp.add_ge(D.row(i).transpose(), D.row(i).dot(ones));
      for (int i = 0; i < n; ++i) {
        Vec row = Vec::Zero(n);
        row[i] = 1.0;
        lp.add_le(row, 2.0);
      }
      const LpResult res = solve_lp(lp);
      if (res.status == LpStatus::Optimal && std::abs(res.z[j] - 1.0) > 1e-9) {
        throw InputError("polyhedron is unbounded");
      }
    }
  }
}

bool feasible(const Mat& A, const Vec& b, const Mat& D, const Vec& e, int n) {
  // Free variables x = p - q.
  LinearProgram lp(2 * n);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Vec row(2 * n);
    row << A.row(i).transpose(), -A.row(i).transpose();
    lp.add_eq(row, b[i]);
  }
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    Vec row(2 * n);
    row << D.row(i).transpose(), -D.row(i).transpose();
    lp.add_ge(row, e[i]);
  }
  return solve_lp(lp).status != LpStatus::Infeasible;
}

}  // namespace

Polytope Polytope::simplex(int n, PolytopeLimits limits) {
  if (n < 1) throw InputError("simplex dimension must be positive");
  auto p = make_impl(PolytopeKind::Simplex, n, limits);
  p->A = Mat::Ones(1, n);
  p->b = Vec::Ones(1);
  p->D = Mat::Identity(n, n);
  p->e = Vec::Zero(n);
  if (static_cast<std::size_t>(n) <= limits.max_vertices) {
    for (int i = 0; i < n; ++i) p->vertices.push_back(Vec::Unit(n, i));
    p->vertices_ok = true;
  } else {
    p->vertex_note = "vertex count " + std::to_string(n) + " exceeds cap";
  }
  p->simplex_like = true;
  finish(*p, n > 1);
  if (!p->vertices_ok) p->aff_dim = n - 1;
  return Polytope(p);
}

Polytope Polytope::box(const Vec& lower, const Vec& upper, PolytopeLimits limits) {
  const int n = static_cast<int>(lower.size());
  if (n < 1 || upper.size() != lower.size()) throw InputError("box bounds must be nonempty and of equal length");
  check_finite(lower, "box lower bound");
  check_finite(upper, "box upper bound");
  if ((upper - lower).minCoeff() <= 0) throw InputError("box needs lower < upper in every coordinate");
  auto p = make_impl(PolytopeKind::Box, n, limits);
  p->lower = lower;
  p->upper = upper;
  p->D = Mat(2 * n, n);
  p->D << Mat::Identity(n, n), -Mat::Identity(n, n);
  p->e = Vec(2 * n);
  p->e << lower, -upper;
  if (n < 63 && (std::size_t{1} << n) <= limits.max_vertices) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = (bits >> (n - 1 - i)) & 1 ? upper[i] : lower[i];
      p->vertices.push_back(v);
    }
    p->vertices_ok = true;
  } else {
    p->vertex_note = "box has 2^" + std::to_string(n) + " vertices, over the cap";
  }
  finish(*p, false);
  return Polytope(p);
}

Polytope Polytope::unit_box(int n, PolytopeLimits limits) {
  return box(Vec::Zero(n), Vec::Ones(n), limits);
}

Polytope Polytope::l1_ball(int n, double radius, PolytopeLimits limits) {
  if (n < 1 || n > 12) throw InputError("l1 ball supports 1 <= n <= 12");
  if (!(radius > 0) || !std::isfinite(radius)) throw InputError("l1 ball radius must be positive");
  auto p = make_impl(PolytopeKind::L1Ball, n, limits);
  p->radius = radius;
  const int rows = 1 << n;
  p->D = Mat(rows, n);
  p->e = Vec::Constant(rows, -radius);
  for (int s = 0; s < rows; ++s) {
    for (int i = 0; i < n; ++i) p->D(s, i) = (s >> (n - 1 - i)) & 1 ? 1.0 : -1.0;
  }
  for (int i = 0; i < n; ++i) {
    p->vertices.push_back(-radius * Vec::Unit(n, i));
    p->vertices.push_back(radius * Vec::Unit(n, i));
  }
  sort_lex(p->vertices);
  p->vertices_ok = true;
  finish(*p, false);
  return Polytope(p);
}

Polytope Polytope::from_vertices(const std::vector<Vec>& points, PolytopeLimits limits) {
  if (points.empty()) throw InputError("vertex list is empty");
  const int n = static_cast<int>(points[0].size());
  if (n < 1) throw InputError("vertices must have positive dimension");
  std::set<std::vector<long long>> seen;
  for (const Vec& v : points) {
    if (v.size() != n) throw InputError("vertex dimension mismatch");
    check_finite(v, "vertex");
    if (!seen.insert(grid_key(v, 1e-12)).second) throw InputError("duplicate vertex " + format_vec(v));
  }
  if (points.size() > limits.max_vertices) throw CapExceeded("vertex list exceeds cap");
  const int N = static_cast<int>(points.size());

  // Every listed point must be extreme: not a convex combination of the others.
  for (int i = 0; i < N && N > 1; ++i) {
    LinearProgram lp(N - 1);
    for (int r = 0; r < n; ++r) {
      Vec row(N - 1);
      for (int j = 0, c = 0; j < N; ++j) {
        if (j != i) row[c++] = points[j][r];
      }
      lp.add_eq(row, points[i][r]);
    }
    lp.add_eq(Vec::Ones(N - 1), 1.0);
    if (solve_lp(lp).status == LpStatus::Optimal) {
      throw InputError("point " + format_vec(points[i]) + " is not a vertex of the hull");
    }
  }

  auto p = make_impl(PolytopeKind::VRep, n, limits);
  p->vertices = points;
  p->vertices_ok = true;

  // H-form: affine hull equalities plus facets found by brute force within
  // the affine coordinates.
  Mat diff(n, N);
  for (int i = 0; i < N; ++i) diff.col(i) = points[i] - points[0];
  const Mat U = column_basis(diff);
  const Mat W = complement_basis(diff);
  const int k = static_cast<int>(U.cols());
  p->A = W.transpose();
  p->b = W.transpose() * points[0];
  Mat Y(k, N);
  for (int i = 0; i < N; ++i) Y.col(i) = U.transpose() * (points[i] - points[0]);

  std::vector<Vec> normals;
  std::vector<double> offsets;
  std::set<std::vector<long long>> facet_keys;
  auto add_facet = [&](Vec normal, double offset) {
    const double len = normal.norm();
    normal /= len;
    offset /= len;
    Vec key(k + 1);
    key << normal, offset;
    if (facet_keys.insert(grid_key(key, 1e-9)).second) {
      normals.push_back(normal);
      offsets.push_back(offset);
    }
  };
  if (k == 1) {
    const double lo = Y.minCoeff(), hi = Y.maxCoeff();
    add_facet(Vec::Ones(1), lo);
    add_facet(-Vec::Ones(1), -hi);
  } else if (k > 1) {
    if (binomial(N, k) > static_cast<double>(kMaxCombinations)) {
      throw CapExceeded("facet enumeration too large for this vertex list");
    }
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    do {
      Mat E(k - 1, k);
      for (int j = 1; j < k; ++j) E.row(j - 1) = (Y.col(idx[j]) - Y.col(idx[0])).transpose();
      Eigen::JacobiSVD<Mat> svd(E, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      if (s.size() < k - 1 || s[k - 2] < 1e-9 * std::max(1.0, s[0])) continue;
      const Vec normal = svd.matrixV().col(k - 1);
      const double offset = normal.dot(Y.col(idx[0]));
      const Vec sl = (Y.transpose() * normal).array() - offset;
      if (sl.minCoeff() >= -1e-9) {
        add_facet(normal, offset);
      } else if (sl.maxCoeff() <= 1e-9) {
        add_facet(-normal, -offset);
      }
    } while (next_combination(idx, N));
  }
  p->D = Mat(static_cast<Eigen::Index>(normals.size()), n);
  p->e = Vec(static_cast<Eigen::Index>(normals.size()));
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const Vec d = U * normals[i];
    p->D.row(i) = d.transpose();
    p->e[i] = offsets[i] + d.dot(points[0]);
  }
  finish(*p, false);
  return Polytope(p);
}

Polytope Polytope::standard_form(const Mat& A, const Vec& b, PolytopeLimits limits) {
  const int n = static_cast<int>(A.cols());
  if (n < 1 || A.rows() != b.size()) throw InputError("standard form: A and b sizes disagree");
  if (numeric_rank(A) != A.rows()) throw InputError("standard form: A must have full row rank");
  Polytope base = h_form(A, b, Mat::Identity(n, n), Vec::Zero(n), limits);
  auto p = std::make_shared<Impl>(*base.impl_);
  p->kind = PolytopeKind::StdForm;
  p->simplex_like = p->vertices_ok;
  for (const Vec& v : p->vertices) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] != 0.0 && v[i] != 1.0) p->simplex_like = false;
    }
  }
  return Polytope(p);
}

Polytope Polytope::h_form(const Mat& A, const Vec& b, const Mat& D, const Vec& e, PolytopeLimits limits) {
  const int n = static_cast<int>(std::max(A.cols(), D.cols()));
  if (n < 1) throw InputError("H-form needs at least one column");
  if ((A.rows() > 0 && A.cols() != n) || (D.rows() > 0 && D.cols() != n)) {
    throw InputError("H-form: A and D column counts disagree");
  }
  if (A.rows() != b.size() || D.rows() != e.size()) throw InputError("H-form: right-hand side sizes disagree");
  check_finite(A, "A");
  check_finite(b, "b");
  check_finite(D, "D");
  check_finite(e, "e");
  auto p = make_impl(PolytopeKind::HForm, n, limits);
  p->A = A.rows() ? A : Mat(0, n);
  p->b = b;
  p->D = D.rows() ? D : Mat(0, n);
  p->e = e;
  check_bounded(p->A, p->D, n);
  p->vertices_ok = basis_vertices(p->A, p->b, p->D, p->e, p->vertices);
  if (!p->vertices_ok) {
    p->vertex_note = "basis enumeration too large";
    if (!feasible(p->A, p->b, p->D, p->e, n)) throw InputError("polytope is empty");
  }
  finish(*p, true);
  return Polytope(p);
}

PolytopeKind Polytope::kind() const { return impl_->kind; }
int Polytope::ambient_dim() const { return impl_->n; }
int Polytope::affine_dim() const { return impl_->aff_dim; }
int Polytope::num_equalities() const { return impl_->rank_A; }
const Mat& Polytope::A() const { return impl_->A; }
const Vec& Polytope::b() const { return impl_->b; }
const Mat& Polytope::D() const { return impl_->D; }
const Vec& Polytope::e() const { return impl_->e; }
const PolytopeLimits& Polytope::limits() const { return impl_->limits; }
const Vec& Polytope::box_lower() const { return impl_->lower; }
const Vec& Polytope::box_upper() const { return impl_->upper; }
double Polytope::l1_radius() const { return impl_->radius; }

bool Polytope::is_standard_form() const {
  return impl_->kind == PolytopeKind::Simplex || impl_->kind == PolytopeKind::StdForm;
}

bool Polytope::is_simplex_like() const { return is_standard_form() && impl_->simplex_like; }

Vec Polytope::slacks(const Vec& x) const {
  if (x.size() != impl_->n) throw InputError("point dimension mismatch");
  return impl_->D * x - impl_->e;
}

bool Polytope::contains(const Vec& x, double tol) const {
  if (x.size() != impl_->n || !x.allFinite()) return false;
  if (impl_->A.rows() > 0 && (impl_->A * x - impl_->b).lpNorm<Eigen::Infinity>() > tol) return false;
  if (impl_->D.rows() > 0 && (impl_->D * x - impl_->e).minCoeff() < -tol) return false;
  return true;
}

namespace {

void check_gradient(const Vec& g, int n) {
  if (g.size() != n) throw InputError("gradient dimension mismatch");
  if (!g.allFinite()) throw InputError("gradient has non-finite entries");
}

// Exact-tie argmin over a candidate list, keeping the earliest candidate.
Vec argmin_over(const std::vector<Vec>& cands, const Vec& g) {
  std::size_t best = 0;
  double best_val = g.dot(cands[0]);
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const double val = g.dot(cands[i]);
    if (val < best_val) {
      best = i;
      best_val = val;
    }
  }
  return cands[best];
}

}  // namespace

Vec Polytope::lmo(const Vec& g) const {
  const Impl& p = *impl_;
  check_gradient(g, p.n);
  switch (p.kind) {
    case PolytopeKind::Simplex: {
      Eigen::Index i = 0;
      for (Eigen::Index j = 1; j < g.size(); ++j) {
        if (g[j] < g[i]) i = j;
      }
      return Vec::Unit(p.n, i);
    }
    case PolytopeKind::Box: {
      Vec v(p.n);
      for (int i = 0; i < p.n; ++i) v[i] = g[i] >= 0 ? p.lower[i] : p.upper[i];
      return v;
    }
    case PolytopeKind::L1Ball: {
      // Vertices are stored lexicographically, so the first exact minimizer
      // is also the lexicographically smallest.
      return argmin_over(p.vertices, g);
    }
    default:
      return argmin_over(vertices(), g);
  }
}

Vec Polytope::in_face_lmo(const Vec& x, const Vec& g) const { return in_face_lmo(x, g, impl_->limits.bind_tol); }

Vec Polytope::in_face_lmo(const Vec& x, const Vec& g, double bind_tol) const {
  const Impl& p = *impl_;
  check_gradient(g, p.n);
  if (!contains(x)) throw InfeasibleError("in_face_lmo: point " + format_vec(x) + " is not in the polytope");
  switch (p.kind) {
    case PolytopeKind::Simplex: {
      Eigen::Index best = -1;
      for (Eigen::Index j = 0; j < g.size(); ++j) {
        if (x[j] > bind_tol && (best < 0 || g[j] < g[best])) best = j;
      }
      return Vec::Unit(p.n, best);
    }
    case PolytopeKind::Box: {
      Vec v(p.n);
      for (int i = 0; i < p.n; ++i) {
        if (x[i] - p.lower[i] <= bind_tol) {
          v[i] = p.lower[i];
        } else if (p.upper[i] - x[i] <= bind_tol) {
          v[i] = p.upper[i];
        } else {
          v[i] = g[i] >= 0 ? p.lower[i] : p.upper[i];
        }
      }
      return v;
    }
    case PolytopeKind::L1Ball: {
      if (p.radius - x.lpNorm<1>() > bind_tol) return lmo(g);
      std::vector<Vec> cands;
      for (const Vec& v : p.vertices) {
        const Eigen::Index i = [&] {
          Eigen::Index j;
          v.cwiseAbs().maxCoeff(&j);
          return j;
        }();
        if (std::abs(x[i]) > bind_tol && x[i] * v[i] > 0) cands.push_back(v);
      }
      return argmin_over(cands, g);
    }
    default: {
      const Face face = minimal_face(x, bind_tol);
      const std::vector<int> idx = face_vertices(face);
      if (idx.empty()) throw Error("in_face_lmo: minimal face has no enumerated vertex");
      std::vector<Vec> cands;
      for (int i : idx) cands.push_back(vertices()[i]);
      return argmin_over(cands, g);
    }
  }
}

double Polytope::max_step(const Vec& x, const Vec& d) const {
  const Impl& p = *impl_;
  if (x.size() != p.n || d.size() != p.n) throw InputError("max_step: dimension mismatch");
  if (!contains(x)) throw InfeasibleError("max_step: point " + format_vec(x) + " is not in the polytope");
  const double dn = d.norm();
  if (dn < 1e-14) return kInf;
  if (p.A.rows() > 0 && (p.A * d).lpNorm<Eigen::Infinity>() > 1e-9 * std::max(1.0, dn)) {
    throw InfeasibleError("max_step: direction leaves the affine hull (Ad != 0)");
  }
  double eta = kInf;
  for (Eigen::Index i = 0; i < p.D.rows(); ++i) {
    const double rate = p.D.row(i).dot(d);
    if (rate < -1e-14 * dn * p.D.row(i).norm()) {
      const double slack = std::max(0.0, p.D.row(i).dot(x) - p.e[i]);
      eta = std::min(eta, slack / -rate);
    }
  }
  return eta;
}

Face Polytope::minimal_face(const Vec& x) const { return minimal_face(x, impl_->limits.bind_tol); }

Face Polytope::minimal_face(const Vec& x, double bind_tol) const {
  if (!contains(x)) throw InfeasibleError("minimal_face: point " + format_vec(x) + " is not in the polytope");
  Face face;
  const Vec s = slacks(x);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] <= bind_tol) face.binding.push_back(static_cast<int>(i));
  }
  face.dim = face_dim(face.binding);
  return face;
}

int Polytope::face_dim(const std::vector<int>& binding) const {
  const Impl& p = *impl_;
  Mat M(p.A.rows() + static_cast<Eigen::Index>(binding.size()), p.n);
  M.topRows(p.A.rows()) = p.A;
  for (std::size_t j = 0; j < binding.size(); ++j) M.row(p.A.rows() + j) = p.D.row(binding[j]);
  return p.n - numeric_rank(M);
}

bool Polytope::has_vertices() const { return impl_->vertices_ok; }

const std::vector<Vec>& Polytope::vertices() const {
  if (!impl_->vertices_ok) throw CapExceeded("vertices unavailable: " + impl_->vertex_note);
  return impl_->vertices;
}

std::vector<int> Polytope::face_vertices(const Face& face) const {
  const auto& verts = vertices();
  std::vector<int> out;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    bool on = true;
    for (int i : face.binding) {
      if (std::abs(impl_->D.row(i).dot(verts[j]) - impl_->e[i]) > impl_->limits.bind_tol) {
        on = false;
        break;
      }
    }
    if (on) out.push_back(static_cast<int>(j));
  }
  return out;
}

bool Polytope::is_vertex(const Vec& x) const { return contains(x) && minimal_face(x).dim == 0; }

double Polytope::diameter() const {
  const Impl& p = *impl_;
  switch (p.kind) {
    case PolytopeKind::Simplex:
      return p.n > 1 ? std::sqrt(2.0) : 0.0;
    case PolytopeKind::Box:
      return (p.upper - p.lower).norm();
    case PolytopeKind::L1Ball:
      return 2.0 * p.radius;
    default: {
      const auto& verts = vertices();
      double best = 0.0;
      for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) best = std::max(best, (verts[i] - verts[j]).norm());
      }
      return best;
    }
  }
}

Vec Polytope::centroid() const {
  const Impl& p = *impl_;
  switch (p.kind) {
    case PolytopeKind::Simplex:
      return Vec::Constant(p.n, 1.0 / p.n);
    case PolytopeKind::Box:
      return 0.5 * (p.lower + p.upper);
    case PolytopeKind::L1Ball:
      return Vec::Zero(p.n);
    default: {
      const auto& verts = vertices();
      Vec c = Vec::Zero(p.n);
      for (const Vec& v : verts) c += v;
      return c / static_cast<double>(verts.size());
    }
  }
}

std::string Polytope::describe() const {
  std::string out = std::string(to_string(impl_->kind)) + " n=" + std::to_string(impl_->n) +
                    " dim=" + std::to_string(impl_->aff_dim) + " rows(D)=" + std::to_string(impl_->D.rows());
  if (impl_->vertices_ok) out += " vertices=" + std::to_string(impl_->vertices.size());
  return out;
}

std::uint64_t face_mask(const Polytope& poly, const Face& face) {
  std::uint64_t mask = 0;
  for (int i : poly.face_vertices(face)) mask |= std::uint64_t{1} << i;
  return mask;
}

Face face_from_mask(const Polytope& poly, std::uint64_t mask) {
  const auto& verts = poly.vertices();
  Face face;
  for (Eigen::Index i = 0; i < poly.D().rows(); ++i) {
    bool tight = true;
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (!((mask >> j) & 1)) continue;
      if (std::abs(poly.D().row(i).dot(verts[j]) - poly.e()[i]) > poly.limits().bind_tol) {
        tight = false;
        break;
      }
    }
    if (tight) face.binding.push_back(static_cast<int>(i));
  }
  face.dim = poly.face_dim(face.binding);
  return face;
}

Mat vertex_matrix(const Polytope& poly, std::uint64_t mask) {
  const auto& verts = poly.vertices();
  std::vector<int> idx;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if ((mask >> j) & 1) idx.push_back(static_cast<int>(j));
  }
  Mat M(poly.ambient_dim(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) M.col(c) = verts[idx[c]];
  return M;
}

std::vector<FaceRecord> enumerate_faces(const Polytope& poly) {
  const auto& verts = poly.vertices();
  if (verts.size() > 64) throw CapExceeded("face lattice needs at most 64 vertices");
  const std::size_t nv = verts.size();
  const std::uint64_t all = nv == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nv) - 1;

  std::vector<std::uint64_t> row_masks;
  for (Eigen::Index i = 0; i < poly.D().rows(); ++i) {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < nv; ++j) {
      if (std::abs(poly.D().row(i).dot(verts[j]) - poly.e()[i]) <= poly.limits().bind_tol) m |= std::uint64_t{1} << j;
    }
    row_masks.push_back(m);
  }

  std::vector<std::uint64_t> order{all};
  std::set<std::uint64_t> seen{all};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::uint64_t cur = order[head];
    for (std::uint64_t rm : row_masks) {
      const std::uint64_t next = cur & rm;
      if (next == 0 || next == cur || seen.count(next)) continue;
      seen.insert(next);
      order.push_back(next);
      if (order.size() > poly.limits().max_faces) throw CapExceeded("face lattice exceeds cap");
    }
  }

  std::vector<FaceRecord> faces;
  faces.reserve(order.size());
  for (std::uint64_t m : order) {
    FaceRecord rec;
    rec.mask = m;
    for (std::size_t i = 0; i < row_masks.size(); ++i) {
      if ((row_masks[i] & m) == m) rec.binding.push_back(static_cast<int>(i));
    }
    rec.dim = poly.face_dim(rec.binding);
    faces.push_back(std::move(rec));
  }
  return faces;
}

namespace {

Vec dirichlet(std::mt19937_64& rng, int k) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  Vec w(k);
  for (int i = 0; i < k; ++i) w[i] = gamma(rng) + 1e-12;
  return w / w.sum();
}

}  // namespace

Vec sample_point(const Polytope& poly, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mode_dist(0, 2);
  const int mode = mode_dist(rng);
  if (poly.has_vertices()) {
    const auto& verts = poly.vertices();
    const int nv = static_cast<int>(verts.size());
    std::uniform_int_distribution<int> pick(0, nv - 1);
    if (mode == 0) return verts[pick(rng)];
    std::vector<int> idx(nv);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const int k = mode == 1 ? std::min(nv, 2 + static_cast<int>(rng() % 2)) : nv;
    const Vec w = dirichlet(rng, k);
    Vec x = Vec::Zero(poly.ambient_dim());
    for (int i = 0; i < k; ++i) x += w[i] * verts[idx[i]];
    return x;
  }
  const int n = poly.ambient_dim();
  switch (poly.kind()) {
    case PolytopeKind::Simplex: {
      const int k = mode == 0 ? 1 : (mode == 1 ? std::min(n, 2 + static_cast<int>(rng() % 2)) : n);
      std::vector<int> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      const Vec w = dirichlet(rng, k);
      Vec x = Vec::Zero(n);
      for (int i = 0; i < k; ++i) x[idx[i]] = w[i];
      return x;
    }
    case PolytopeKind::Box: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      Vec x(n);
      for (int i = 0; i < n; ++i) {
        const double r = u(rng);
        const double t = mode == 2 ? r : (r < 0.5 ? std::round(u(rng)) : r);
        x[i] = poly.box_lower()[i] + t * (poly.box_upper()[i] - poly.box_lower()[i]);
      }
      return x;
    }
    default:
      throw CapExceeded("sample_point: vertices unavailable");
  }
}

}  // namespace polyfw
