#include "polyfw/stepsize.hpp"

#include "polyfw/active_set.hpp"

#include <algorithm>
#include <cmath>

namespace polyfw {

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::LineSearch:
      return "ls";
    case StepKind::ShortStep:
      return "ss";
    case StepKind::TargetPow2:
      return "pow2";
  }
  return "?";
}

double line_search(const Objective& f, const Vec& x, const Vec& d, double eta_max, double ls_tol) {
  if (!(eta_max >= 0)) throw InputError("line_search: eta_max must be nonnegative");
  eta_max = std::min(eta_max, ActiveSet::kEtaCap);
  if (eta_max == 0.0) return 0.0;
  if (f.hessian) {
    const double inner = f.gradient(x).dot(d);
    const double curv = d.dot(*f.hessian * d);
    if (!std::isfinite(inner) || !std::isfinite(curv)) throw Error("line_search: non-finite objective data");
    if (curv <= 0.0) return inner < 0.0 ? eta_max : 0.0;
    return std::clamp(-inner / curv, 0.0, eta_max);
  }
  auto phi = [&](double eta) {
    const double v = f.value(x + eta * d);
    if (!std::isfinite(v)) throw Error("line_search: non-finite objective along the segment");
    return v;
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = eta_max;
  double c = hi - inv_phi * (hi - lo), e = lo + inv_phi * (hi - lo);
  double fc = phi(c), fe = phi(e);
  while (hi - lo > ls_tol) {
    if (fc <= fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - inv_phi * (hi - lo);
      fc = phi(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + inv_phi * (hi - lo);
      fe = phi(e);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double f_mid = phi(mid);
  if (phi(eta_max) <= f_mid) return eta_max;
  if (phi(0.0) <= f_mid) return 0.0;
  return mid;
}

double short_step(double inner, double L, double eta_max) {
  if (!(L > 0)) return inner < 0 ? eta_max : 0.0;
  return std::clamp(-inner / L, 0.0, eta_max);
}

double short_step(const Vec& g, const Vec& d, double L, double eta_max) { return short_step(g.dot(d), L, eta_max); }

double target_pow2(double gamma, double eta_prev) {
  if (!(gamma > 0)) return 0.0;
  const double cap = std::min({gamma, eta_prev, 1.0});
  int exp = 0;
  std::frexp(cap, &exp);  // cap = m * 2^exp with m in [0.5, 1)
  return std::ldexp(1.0, exp - 1);
}

double target_pow2(const Vec& g, const Vec& d_pw, double L, double eta_prev) {
  if (!(L > 0)) throw InputError("target_pow2: L must be positive");
  return target_pow2(-g.dot(d_pw) / L, eta_prev);
}

}  // namespace polyfw
