#include "polyfw/core.hpp"

#include <cstdio>

namespace polyfw {

double norm_of(const Vec& v, Norm norm) {
  switch (norm) {
    case Norm::L1:
      return v.lpNorm<1>();
    case Norm::L2:
      return v.norm();
    case Norm::LInf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  return v.norm();
}

double dual_norm_of(const Vec& v, Norm norm) {
  switch (norm) {
    case Norm::L1:
      return norm_of(v, Norm::LInf);
    case Norm::L2:
      return v.norm();
    case Norm::LInf:
      return norm_of(v, Norm::L1);
  }
  return v.norm();
}

int numeric_rank(const Mat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

std::string format_vec(const Vec& v) {
  std::string out = "(";
  char buf[32];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", v[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

}  // namespace polyfw
