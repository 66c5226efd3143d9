#pragma once

#include "polyfw/objectives.hpp"

namespace polyfw {

enum class StepKind { LineSearch, ShortStep, TargetPow2 };

const char* to_string(StepKind kind);

struct StepRule {
  StepKind kind = StepKind::ShortStep;
  double L = 0.0;  // curvature constant, needed by ShortStep and TargetPow2
  double ls_tol = 1e-10;
};

// argmin of f(x + eta d) over [0, eta_max]. Closed form when f has a constant
// Hessian, golden-section search otherwise. The endpoints are compared
// explicitly so a minimizer at eta_max comes back exactly as eta_max.
double line_search(const Objective& f, const Vec& x, const Vec& d, double eta_max, double ls_tol = 1e-10);

// clamp(-<g,d>/L, 0, eta_max)
double short_step(double inner, double L, double eta_max);
double short_step(const Vec& g, const Vec& d, double L, double eta_max);

// Largest 2^-k (k >= 0) not exceeding min(gamma, eta_prev); 0 when gamma <= 0.
double target_pow2(double gamma, double eta_prev);
// gamma = -<g, d_pw>/L
double target_pow2(const Vec& g, const Vec& d_pw, double L, double eta_prev);

}  // namespace polyfw
