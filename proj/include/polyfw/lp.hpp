#pragma once

#include "polyfw/core.hpp"

namespace polyfw {

// Dense two-phase simplex for the small LPs that come up in the exact geometry
// routines (a few hundred variables at most). Not meant for anything bigger.
//
//   minimize c'z  subject to  A_le z <= b_le,  A_ge z >= b_ge,  A_eq z = b_eq,  z >= 0
struct LinearProgram {
  Vec c;
  Mat A_le, A_ge, A_eq;
  Vec b_le, b_ge, b_eq;

  explicit LinearProgram(Eigen::Index num_vars);
  void add_le(const Vec& row, double rhs);
  void add_ge(const Vec& row, double rhs);
  void add_eq(const Vec& row, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vec z;
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace polyfw
