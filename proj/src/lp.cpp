#include "polyfw/lp.hpp"

#include <cmath>
#include <limits>

namespace polyfw {

namespace {

void append_row(Mat& m, Vec& rhs, const Vec& row, double value) {
  const Eigen::Index r = m.rows();
  m.conservativeResize(r + 1, row.size());
  m.row(r) = row.transpose();
  rhs.conservativeResize(r + 1);
  rhs[r] = value;
}

constexpr double kPivotTol = 1e-11;

// Tableau with the objective in the last row and the right-hand side in the
// last column. basis[i] is the column basic in row i.
struct Tableau {
  Mat T;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return T.rows() - 1; }
  Eigen::Index cols() const { return T.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    T.row(r) /= T(r, c);
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      if (i != r && T(i, c) != 0.0) T.row(i) -= T(i, c) * T.row(r);
    }
    basis[r] = c;
  }

  // Bland's rule; columns >= limit are never allowed to enter.
  // Returns false if unbounded.
  bool run(Eigen::Index limit) {
    const Eigen::Index obj = rows();
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (T(obj, j) < -1e-10) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < obj; ++i) {
        if (T(i, enter) > kPivotTol) {
          const double ratio = T(i, cols()) / T(i, enter);
          if (ratio < best - 1e-13 ||
              (std::abs(ratio - best) <= 1e-13 && leave >= 0 && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw Error("simplex iteration limit reached");
  }
};

}  // namespace

LinearProgram::LinearProgram(Eigen::Index num_vars)
    : c(Vec::Zero(num_vars)),
      A_le(0, num_vars),
      A_ge(0, num_vars),
      A_eq(0, num_vars),
      b_le(0),
      b_ge(0),
      b_eq(0) {}

void LinearProgram::add_le(const Vec& row, double rhs) { append_row(A_le, b_le, row, rhs); }
void LinearProgram::add_ge(const Vec& row, double rhs) { append_row(A_ge, b_ge, row, rhs); }
void LinearProgram::add_eq(const Vec& row, double rhs) { append_row(A_eq, b_eq, row, rhs); }

LpResult solve_lp(const LinearProgram& lp) {
  const Eigen::Index n = lp.c.size();
  const Eigen::Index n_le = lp.A_le.rows(), n_ge = lp.A_ge.rows(), n_eq = lp.A_eq.rows();
  const Eigen::Index m = n_le + n_ge + n_eq;
  const Eigen::Index n_slack = n_le + n_ge;

  // Columns: [original | slack/surplus | artificial | rhs]
  Mat rows = Mat::Zero(m, n + n_slack);
  Vec rhs(m);
  for (Eigen::Index i = 0; i < n_le; ++i) {
    rows.row(i).head(n) = lp.A_le.row(i);
    rows(i, n + i) = 1.0;
    rhs[i] = lp.b_le[i];
  }
  for (Eigen::Index i = 0; i < n_ge; ++i) {
    rows.row(n_le + i).head(n) = lp.A_ge.row(i);
    rows(n_le + i, n + n_le + i) = -1.0;
    rhs[n_le + i] = lp.b_ge[i];
  }
  for (Eigen::Index i = 0; i < n_eq; ++i) {
    rows.row(n_slack + i).head(n) = lp.A_eq.row(i);
    rhs[n_slack + i] = lp.b_eq[i];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      rows.row(i) *= -1.0;
      rhs[i] = -rhs[i];
    }
  }

  // A row whose slack column is +1 can start with the slack basic.
  std::vector<Eigen::Index> start(m, -1);
  Eigen::Index n_art = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (i < n_slack && rows(i, n + i) > 0.5) {
      start[i] = n + i;
    } else {
      ++n_art;
    }
  }
  const Eigen::Index n_real = n + n_slack;
  Tableau tab;
  tab.T = Mat::Zero(m + 1, n_real + n_art + 1);
  tab.basis.assign(m, -1);
  Eigen::Index art = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.T.row(i).head(n_real) = rows.row(i);
    tab.T(i, n_real + n_art) = rhs[i];
    if (start[i] >= 0) {
      tab.basis[i] = start[i];
    } else {
      tab.T(i, n_real + art) = 1.0;
      tab.basis[i] = n_real + art;
      ++art;
    }
  }

  LpResult result;
  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[i] >= n_real) tab.T.row(m) -= tab.T.row(i);
    }
    tab.T.row(m).segment(n_real, n_art).setZero();
    tab.run(n_real + n_art);
    const double infeas = -tab.T(m, tab.cols());
    if (infeas > 1e-9 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (Eigen::Index i = 0; i < tab.rows(); ++i) {
      if (tab.basis[i] < n_real) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n_real; ++j) {
        if (std::abs(tab.T(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        const Eigen::Index last = tab.T.rows() - 1;
        Mat kept(tab.T.rows() - 1, tab.T.cols());
        kept << tab.T.topRows(i), tab.T.bottomRows(last - i);
        tab.T = kept;
        tab.basis.erase(tab.basis.begin() + i);
        --i;
      }
    }
  }

  // Phase 2: drop artificial columns and load the real objective.
  {
    Mat T2(tab.T.rows(), n_real + 1);
    T2.leftCols(n_real) = tab.T.leftCols(n_real);
    T2.col(n_real) = tab.T.col(tab.cols());
    tab.T = T2;
  }
  const Eigen::Index obj = tab.rows();
  tab.T.row(obj).setZero();
  tab.T.row(obj).head(n) = lp.c.transpose();
  for (Eigen::Index i = 0; i < obj; ++i) {
    const double cb = tab.T(obj, tab.basis[i]);
    if (cb != 0.0) tab.T.row(obj) -= cb * tab.T.row(i);
  }
  if (!tab.run(n_real)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.z = Vec::Zero(n);
  for (Eigen::Index i = 0; i < obj; ++i) {
    if (tab.basis[i] < n) result.z[tab.basis[i]] = tab.T(i, n_real);
  }
  result.value = lp.c.dot(result.z);
  return result;
}

}  // namespace polyfw
