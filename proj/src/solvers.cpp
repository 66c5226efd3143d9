#include "polyfw/solvers.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace polyfw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shared bookkeeping for the four loops.
class Recorder {
 public:
  Recorder(const Objective& f, const RunConfig& cfg, RunTrace& trace) : f_(f), cfg_(cfg), trace_(trace) {
    if (!(cfg.gap_tol > 0)) throw InputError("gap_tol must be positive");
    if (cfg.record_every == 0) throw InputError("record_every must be positive");
    trace_.variant = cfg.variant;
    trace_.step = cfg.step;
    trace_.f_star = f.f_star;
  }

  IterRecord start(std::size_t t, const Vec& x, const Vec& g, double gap) {
    IterRecord rec;
    rec.t = t;
    rec.f_val = f_.value(x);
    if (!std::isfinite(rec.f_val) || !g.allFinite()) throw Error("objective is not finite at the iterate");
    rec.f_gap = f_.f_star ? rec.f_val - *f_.f_star : kNaN;
    rec.fw_gap = gap;
    rec.pair_gap = kNaN;
    return rec;
  }

  // Returns true when the loop should stop (record already stored).
  bool stop_check(IterRecord& rec, const Vec& x) {
    if (rec.fw_gap <= cfg_.gap_tol) {
      finish(rec, x, TerminalReason::Converged);
      return true;
    }
    if (rec.t >= cfg_.max_iters) {
      finish(rec, x, TerminalReason::MaxIters);
      return true;
    }
    return false;
  }

  void finish(IterRecord& rec, const Vec& x, TerminalReason reason) {
    rec.step_kind = "none";
    rec.case_id = 0;
    rec.eta = 0.0;
    trace_.reason = reason;
    trace_.x_final = x;
    push(rec, x, true);
  }

  void push(const IterRecord& rec, const Vec& x, bool force = false) {
    if (force || rec.t % cfg_.record_every == 0) {
      trace_.records.push_back(rec);
      if (cfg_.store_iterates) trace_.iterates.push_back(x);
    }
  }

  void check_feasible(const Polytope& poly, std::size_t t, const Vec& x) const {
    if (t % cfg_.record_every == 0 && !poly.contains(x, 1e-8)) {
      throw InvariantViolation("iterate " + std::to_string(t) + " left the polytope");
    }
  }

 private:
  const Objective& f_;
  const RunConfig& cfg_;
  RunTrace& trace_;
};

double choose_step(const Objective& f, const StepRule& rule, const Vec& x, const Direction& d) {
  switch (rule.kind) {
    case StepKind::LineSearch:
      return line_search(f, x, d.vec, d.eta_max, rule.ls_tol);
    case StepKind::ShortStep:
      if (!(rule.L > 0)) throw InputError("short-step needs L > 0");
      return short_step(d.inner, rule.L, d.eta_max);
    case StepKind::TargetPow2:
      throw InputError("the pow2 step rule is only defined for FWIPW");
  }
  return 0.0;
}

// Case 1: eta < eta_max; Case 2: eta = eta_max >= 1; Case 3: eta = eta_max < 1.
int classify(double& eta, double eta_max) {
  if (eta >= eta_max - 1e-12 * std::max(1.0, eta_max)) {
    eta = eta_max;
    return eta_max >= 1.0 ? 2 : 3;
  }
  return 1;
}

Vec start_point(const Polytope& poly, const RunConfig& cfg) {
  Vec x0 = cfg.x0 ? *cfg.x0 : poly.lmo(Vec::Zero(poly.ambient_dim()));
  if (x0.size() != poly.ambient_dim()) throw InputError("x0 dimension mismatch");
  if (!poly.contains(x0)) throw InfeasibleError("x0 is not in the polytope");
  return x0;
}

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::FW:
      return "fw";
    case Variant::AFW:
      return "afw";
    case Variant::BPFW:
      return "bpfw";
    case Variant::IFW:
      return "ifw";
    case Variant::FWIPW:
      return "fwipw";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::FW, Variant::AFW, Variant::BPFW, Variant::IFW, Variant::FWIPW}) {
    if (name == to_string(v)) return v;
  }
  throw InputError("unknown variant '" + name + "'");
}

const char* to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::Converged:
      return "converged";
    case TerminalReason::MaxIters:
      return "max_iters";
    case TerminalReason::Stationary:
      return "stationary";
  }
  return "?";
}

RunTrace run_fw(const Polytope& poly, const Objective& f, const RunConfig& cfg) {
  RunTrace trace;
  Recorder rec_(f, cfg, trace);
  Vec x = start_point(poly, cfg);
  for (std::size_t t = 0;; ++t) {
    const Vec g = f.gradient(x);
    const Vec v = poly.lmo(g);
    IterRecord rec = rec_.start(t, x, g, fw_gap(g, x, v));
    rec.support_or_face_dim = poly.minimal_face(x).dim;
    if (rec_.stop_check(rec, x)) break;

    Direction d;
    d.kind = DirectionKind::FW;
    d.vec = v - x;
    d.inner = g.dot(d.vec);
    d.eta_max = 1.0;
    double eta = choose_step(f, cfg.step, x, d);
    rec.case_id = classify(eta, 1.0);
    rec.step_kind = "FW";
    rec.eta = eta;
    rec.inner = d.inner;
    rec.eta_max = 1.0;
    rec_.push(rec, x);
    if (eta == 1.0) {
      x = v;
    } else {
      x += eta * d.vec;
    }
    rec_.check_feasible(poly, t + 1, x);
  }
  return trace;
}

RunTrace run_afw_bpfw(const Polytope& poly, const Objective& f, const RunConfig& cfg) {
  if (cfg.variant != Variant::AFW && cfg.variant != Variant::BPFW) {
    throw InputError("run_afw_bpfw: variant must be afw or bpfw");
  }
  RunTrace trace;
  Recorder rec_(f, cfg, trace);
  ActiveSet aset = ActiveSet::from_vertex(poly, start_point(poly, cfg));
  trace.initial_support = 1;
  for (std::size_t t = 0;; ++t) {
    const Vec& x = aset.point();
    const Vec g = f.gradient(x);
    const CandidateSet cands =
        cfg.variant == Variant::AFW ? candidates_afw(poly, aset, g) : candidates_bpfw(poly, aset, g);
    IterRecord rec = rec_.start(t, x, g, fw_gap(g, x, cands.v));
    rec.support_or_face_dim = static_cast<int>(aset.size());
    rec.pair_gap = g.dot(cands.a - cands.v);
    if (rec_.stop_check(rec, x)) break;

    const Direction& d = select(cands.dirs);
    double eta = choose_step(f, cfg.step, x, d);
    rec.case_id = classify(eta, d.eta_max);
    rec.step_kind = to_string(d.kind);
    rec.eta = eta;
    rec.inner = d.inner;
    rec.eta_max = d.eta_max;
    rec_.push(rec, x);
    switch (d.kind) {
      case DirectionKind::FW:
        aset.apply_step(DirectionKind::FW, aset.intern(d.target), -1, eta);
        break;
      case DirectionKind::Away:
        aset.apply_step(DirectionKind::Away, *aset.find(d.source), -1, eta);
        break;
      default:
        aset.apply_step(DirectionKind::BPFW, *aset.find(d.source), *aset.find(d.target), eta);
        break;
    }
    rec_.check_feasible(poly, t + 1, aset.point());
  }
  return trace;
}

RunTrace run_ifw(const Polytope& poly, const Objective& f, const RunConfig& cfg) {
  RunTrace trace;
  Recorder rec_(f, cfg, trace);
  Vec x = start_point(poly, cfg);
  for (std::size_t t = 0;; ++t) {
    const Vec g = f.gradient(x);
    const CandidateSet cands = candidates_ifw(poly, x, g);
    IterRecord rec = rec_.start(t, x, g, fw_gap(g, x, cands.v));
    rec.support_or_face_dim = poly.minimal_face(x).dim;
    rec.pair_gap = g.dot(cands.a - cands.v);
    if (rec_.stop_check(rec, x)) break;

    const Direction& d = select(cands.dirs);
    double eta = choose_step(f, cfg.step, x, d);
    rec.case_id = classify(eta, d.eta_max);
    rec.step_kind = to_string(d.kind);
    rec.eta = eta;
    rec.inner = d.inner;
    rec.eta_max = d.eta_max;
    rec_.push(rec, x);
    if (d.kind == DirectionKind::FW && eta == 1.0) {
      x = d.target;
    } else {
      x += eta * d.vec;
    }
    rec_.check_feasible(poly, t + 1, x);
  }
  return trace;
}

RunTrace run_fwipw(const Polytope& poly, const Objective& f, const RunConfig& cfg) {
  if (!poly.is_simplex_like()) throw InputError("FWIPW needs a simplex-like polytope");
  if (cfg.step.kind != StepKind::TargetPow2) throw InputError("FWIPW needs the pow2 step rule");
  if (!(cfg.step.L > 0)) throw InputError("FWIPW needs L > 0");
  RunTrace trace;
  Recorder rec_(f, cfg, trace);
  Vec x = start_point(poly, cfg);
  if (!poly.is_vertex(x)) throw InputError("FWIPW must start at a vertex");
  double eta_prev = 1.0;
  for (std::size_t t = 0;; ++t) {
    const Vec g = f.gradient(x);
    const Vec v = poly.lmo(g);
    IterRecord rec = rec_.start(t, x, g, fw_gap(g, x, v));
    // Iterates live on a dyadic grid, so zero coordinates are exactly zero.
    rec.support_or_face_dim = poly.minimal_face(x, 0.0).dim;
    if (rec_.stop_check(rec, x)) break;

    const Direction d = pairwise_direction(poly, x, g, 0.0);
    rec.pair_gap = -d.inner;
    rec.gamma = -d.inner / cfg.step.L;
    if (!(rec.gamma > 0)) {
      rec_.finish(rec, x, TerminalReason::Stationary);
      break;
    }
    const double eta = target_pow2(rec.gamma, eta_prev);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double alpha = x[i] / eta;
      if (std::abs(alpha - std::round(alpha)) > 1e-9) {
        throw InvariantViolation("FWIPW integrality certificate failed at t=" + std::to_string(t));
      }
    }
    rec.case_id = eta == 1.0 ? 2 : 1;
    rec.step_kind = "PW";
    rec.eta = eta;
    rec.inner = d.inner;
    rec.eta_max = eta_prev;
    rec_.push(rec, x);
    x += eta * d.vec;
    eta_prev = eta;
    rec_.check_feasible(poly, t + 1, x);
  }
  return trace;
}

RunTrace run(const Polytope& poly, const Objective& f, const RunConfig& cfg) {
  switch (cfg.variant) {
    case Variant::FW:
      return run_fw(poly, f, cfg);
    case Variant::AFW:
    case Variant::BPFW:
      return run_afw_bpfw(poly, f, cfg);
    case Variant::IFW:
      return run_ifw(poly, f, cfg);
    case Variant::FWIPW:
      return run_fwipw(poly, f, cfg);
  }
  throw InputError("unknown variant");
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "t,f_val,f_gap,fw_gap,case,eta,step_kind,support_or_face_dim\n";
  char buf[256];
  for (const IterRecord& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d,%.17g,%s,%d\n", r.t, r.f_val, r.f_gap, r.fw_gap,
                  r.case_id, r.eta, r.step_kind.c_str(), r.support_or_face_dim);
    out << buf;
  }
}

}  // namespace polyfw
