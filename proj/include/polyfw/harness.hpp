#pragma once

#include "polyfw/geometry.hpp"
#include "polyfw/objectives.hpp"
#include "polyfw/polytope.hpp"
#include "polyfw/solvers.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace polyfw {

// b_t = (beta0^-p + p * sum_{i<t} sigma_i)^(-1/p) for t = 0..sigmas.size().
std::vector<double> borwein_bound(double beta0, double p, const std::vector<double>& sigmas);

enum class Regime { Linear, Sublinear, Inconclusive };

const char* to_string(Regime r);

struct RateFit {
  double exponent = 0.0;  // slope of log gap against log t
  double ratio = 0.0;     // per-iteration contraction exp(slope of log gap against t)
  double r2 = 0.0;        // r^2 of the selected model (the larger one when inconclusive)
  double r2_power = 0.0;
  double r2_linear = 0.0;
  std::size_t t_lo = 0, t_hi = 0;
  std::size_t points = 0;
  Regime regime = Regime::Inconclusive;
};

// Least squares on the samples with t_lo <= t <= t_hi and gap > 0; the first
// 10 iterations are always skipped and long windows are thinned to 200
// log-spaced samples. Throws when fewer than 20 samples remain.
RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& gap, std::size_t t_lo, std::size_t t_hi);
RateFit fit_rate(const RunTrace& trace, std::size_t t_lo, std::size_t t_hi);

// Last t whose primal gap is above `floor`.
std::size_t last_above(const RunTrace& trace, double floor);

struct Regimes {
  std::optional<std::size_t> t0;
  std::optional<std::size_t> t1;
};

enum class TheoremId { FW, AFW_BPFW, IFW, IFW_STD, FWIPW };

const char* to_string(TheoremId id);

// Needs a trace with one record per iteration. For IFW_STD the constant
// regime uses the recorded face dimension at t0.
Regimes detect_regimes(const RunTrace& trace, TheoremId id, double mu, double theta, double L);

struct EnvelopeContext {
  int dim = 0;  // dim(C), used by IFW
  int m = 0;    // rank(A), used by IFW_STD
};

struct EnvelopeReport {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<std::size_t> first_violation;
  double worst_excess = 0.0;  // max of (gap - bound) / max(bound, floor)
  Regimes regimes;
  std::string message;
};

// Theorem bound on f(x_t) - f* at iteration t.
std::vector<double> theorem_bound(const RunTrace& trace, TheoremId id, double mu, double theta, double L,
                                  const EnvelopeContext& ctx);

// Checks gap_t <= bound_t (1 + 1e-8) + roundoff floor at every t.
EnvelopeReport envelope_check(const RunTrace& trace, TheoremId id, double mu, double theta, double L,
                              const EnvelopeContext& ctx = {});

struct AuditReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest violation, relative to the tolerance scale
  std::string first;
  bool passed() const { return violations == 0; }
};

// Per-step decrease implied by the step case: Case 1 f+ <= f - <g,d>^2/(2L),
// Case 2 f+ <= f + <g,d>/2, Case 3 f+ <= f. FWIPW steps are checked against
// f+ <= f + eta <g,d>/2 and f+ <= f - L eta^2/2.
AuditReport audit_progress(const RunTrace& trace, double L);
// <g,d> <= <g, v - x> and, for AFW/BPFW/IFW, <g,d> <= <g, v - a>/2.
AuditReport audit_selection(const RunTrace& trace);
// fw_gap >= h/r(X*,x); for AFW/BPFW also <g,a-v> >= h/v(X*,x); for IFW and
// FWIPW <g,a-v> >= h/f(X*,x). Needs stored iterates. Samples at most
// `max_points` iterates.
AuditReport audit_scaling(const RunTrace& trace, const Polytope& poly, const OptimalSet& xstar,
                          std::size_t max_points = 400);
// gamma_t >= eta_t >= mu^theta h^(1-theta)/(2L) for t >= t0.
AuditReport audit_fwipw_sandwich(const RunTrace& trace, double mu, double theta, double L);
// eta_t nonincreasing, every eta an exact power of two, f nonincreasing after t0.
AuditReport audit_fwipw_steps(const RunTrace& trace);
// AFW/BPFW: #Case 3 <= #Case 1/2 + initial support - 1 on every prefix.
// IFW: face dimension drops by at least 1 on every Case 3 step.
AuditReport audit_drop_steps(const RunTrace& trace);
// f(x_t) - f* is nonincreasing (AFW/BPFW/IFW, and FW).
AuditReport audit_monotone(const RunTrace& trace);

// One certified experiment: instance, run, certificate and checks.
struct Experiment {
  std::string name;
  Polytope poly;
  Objective f;
  RunConfig cfg;
  TheoremId theorem = TheoremId::FW;
  BoundMode bound = BoundMode::Radial;
  std::size_t fit_from = 10;  // first iteration of the rate-fit window
};

struct ExperimentResult {
  std::string name;
  std::string variant;
  double theta = 0.0;
  double mu = 0.0;  // distance-relative constant used by the envelope
  double L = 0.0;
  bool certified = false;  // false when the geometric factor vanished (no envelope)
  std::string note;
  RunTrace trace;
  std::optional<RateFit> fit;
  EnvelopeReport envelope;
  EnvelopeReport negative_control;  // same check with mu inflated 10x
  std::vector<AuditReport> audits;
  std::string error;  // nonempty when the pipeline threw
  // No error, every audit clean and, when certified, the envelope holds. The
  // negative control is reported but does not enter here.
  bool all_passed() const;
};

ExperimentResult run_experiment(const Experiment& ex);

// Bench suites: wolfe, interior, theta-sweep, fwipw.
std::vector<std::string> suite_names();
std::vector<Experiment> make_suite(const std::string& name);

// Runs the experiments concurrently; results keep the input order.
std::vector<ExperimentResult> run_suite(const std::vector<Experiment>& experiments);

// Writes <dir>/<name>_<variant>.csv per run, summary.txt and summary.csv.
// Returns true when every result passed.
bool write_suite_report(const std::vector<ExperimentResult>& results, const std::string& dir, std::ostream& log);

}  // namespace polyfw
