#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace polyfw {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong sizes, non-finite data, bad flags.
class InputError : public Error {
 public:
  using Error::Error;
};

// Point outside the polytope, or a direction leaving its affine hull.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An exact routine was asked to work beyond its configured size gate.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A runtime audit of an algorithmic invariant failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

enum class Norm { L1, L2, LInf };

double norm_of(const Vec& v, Norm norm);
// Dual norm of the configured primal norm: l1 <-> linf, l2 <-> l2.
double dual_norm_of(const Vec& v, Norm norm);

int numeric_rank(const Mat& m, double tol = 1e-9);

// Lexicographic order on equal-length vectors.
bool lex_less(const Vec& a, const Vec& b);

std::string format_vec(const Vec& v);

}  // namespace polyfw
