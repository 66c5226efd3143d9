#include "polyfw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace polyfw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRel = 1e-8;

bool is_half(double theta) { return std::abs(theta - 0.5) < 1e-15; }

void require_dense(const RunTrace& trace) {
  if (trace.records.empty()) throw InputError("empty trace");
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    if (trace.records[i].t != i) throw InputError("the harness needs one record per iteration (record_every = 1)");
  }
  if (!trace.f_star) throw InputError("the harness needs a known f*");
}

// Absolute roundoff allowance for f - f*.
double roundoff_floor(const RunTrace& trace) {
  const double scale = std::max({1.0, std::abs(*trace.f_star), std::abs(trace.records.front().f_val)});
  return 64.0 * kEps * scale;
}

double gap_at(const RunTrace& trace, std::size_t t) { return std::max(0.0, trace.records[t].f_gap); }

std::size_t ceil_div(std::size_t a, std::size_t q) { return (a + q - 1) / q; }

struct Line {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

Line regress(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line l;
  l.slope = sxx > 0 ? sxy / sxx : 0.0;
  l.intercept = my - l.slope * mx;
  l.r2 = (sxx > 0 && syy > 0) ? sxy * sxy / (sxx * syy) : (syy == 0 ? 1.0 : 0.0);
  return l;
}

void note(AuditReport& rep, std::size_t t, double excess, double scale, const std::string& what) {
  ++rep.violations;
  rep.worst = std::max(rep.worst, excess / std::max(scale, 1e-300));
  if (rep.first.empty()) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "t=%zu %s (excess %.3g)", t, what.c_str(), excess);
    rep.first = buf;
  }
}

}  // namespace

std::vector<double> borwein_bound(double beta0, double p, const std::vector<double>& sigmas) {
  if (!(p > 0)) throw InputError("borwein_bound needs p > 0");
  if (beta0 < 0) throw InputError("borwein_bound needs beta0 >= 0");
  std::vector<double> out(sigmas.size() + 1, 0.0);
  if (beta0 == 0.0) return out;
  double acc = std::pow(beta0, -p);
  out[0] = beta0;
  for (std::size_t t = 0; t < sigmas.size(); ++t) {
    if (sigmas[t] < 0) throw InputError("borwein_bound needs sigma_t >= 0");
    acc += p * sigmas[t];
    out[t + 1] = std::pow(acc, -1.0 / p);
  }
  return out;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Linear: return "linear";
    case Regime::Sublinear: return "sublinear";
    case Regime::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::FW: return "fw";
    case TheoremId::AFW_BPFW: return "afw-bpfw";
    case TheoremId::IFW: return "ifw";
    case TheoremId::IFW_STD: return "ifw-std";
    case TheoremId::FWIPW: return "fwipw";
  }
  return "?";
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& gap, std::size_t t_lo, std::size_t t_hi) {
  if (t.size() != gap.size()) throw InputError("fit_rate: size mismatch");
  const double lo = static_cast<double>(std::max<std::size_t>(t_lo, 10));
  const double hi = static_cast<double>(t_hi);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= lo && t[i] <= hi && t[i] > 0 && std::isfinite(gap[i]) && gap[i] > 0) idx.push_back(i);
  }
  if (idx.size() > 200) {
    std::vector<std::size_t> thin;
    const double a = t[idx.front()], b = t[idx.back()];
    auto pos = idx.begin();
    for (int k = 0; k < 200; ++k) {
      const double target = a * std::pow(b / a, k / 199.0);
      pos = std::lower_bound(pos, idx.end(), target, [&](std::size_t i, double v) { return t[i] < v; });
      if (pos == idx.end()) break;
      if (thin.empty() || thin.back() != *pos) thin.push_back(*pos);
    }
    idx.swap(thin);
  }
  if (idx.size() < 20) throw InputError("fit_rate: window has fewer than 20 usable points");

  std::vector<double> lt, tt, lg;
  for (std::size_t i : idx) {
    lt.push_back(std::log(t[i]));
    tt.push_back(t[i]);
    lg.push_back(std::log(gap[i]));
  }
  const Line power = regress(lt, lg);
  const Line linear = regress(tt, lg);
  RateFit fit;
  fit.exponent = power.slope;
  fit.ratio = std::exp(linear.slope);
  fit.r2_power = power.r2;
  fit.r2_linear = linear.r2;
  fit.t_lo = static_cast<std::size_t>(t[idx.front()]);
  fit.t_hi = static_cast<std::size_t>(t[idx.back()]);
  fit.points = idx.size();
  if (linear.r2 > power.r2 + 0.02) {
    fit.regime = Regime::Linear;
  } else if (power.r2 > linear.r2 + 0.02) {
    fit.regime = Regime::Sublinear;
  }
  fit.r2 = fit.regime == Regime::Linear ? linear.r2 : fit.regime == Regime::Sublinear ? power.r2
                                                                                     : std::max(power.r2, linear.r2);
  return fit;
}

RateFit fit_rate(const RunTrace& trace, std::size_t t_lo, std::size_t t_hi) {
  std::vector<double> t, gap;
  for (const IterRecord& r : trace.records) {
    t.push_back(static_cast<double>(r.t));
    gap.push_back(r.f_gap);
  }
  return fit_rate(t, gap, t_lo, t_hi);
}

std::size_t last_above(const RunTrace& trace, double floor) {
  std::size_t last = 0;
  for (const IterRecord& r : trace.records) {
    if (r.f_gap > floor) last = r.t;
  }
  return last;
}

Regimes detect_regimes(const RunTrace& trace, TheoremId id, double mu, double theta, double L) {
  require_dense(trace);
  if (!(mu > 0) || !(L > 0) || theta < 0 || theta > 0.5) throw InputError("detect_regimes needs a certificate");
  Regimes out;
  const auto& recs = trace.records;
  if (id == TheoremId::FWIPW) {
    for (const IterRecord& r : recs) {
      if (r.case_id != 0 && r.gamma < 1.0) {
        out.t0 = r.t;
        break;
      }
    }
    out.t1 = out.t0;
    return out;
  }
  const double c = id == TheoremId::FW ? 2.0 : 8.0;
  for (const IterRecord& r : recs) {
    const double h = std::max(0.0, r.f_gap);
    if (std::pow(mu, 2 * theta) * std::pow(h, 1 - 2 * theta) / (c * L) <= 0.5) {
      out.t0 = r.t;
      break;
    }
  }
  if (!out.t0) return out;
  const std::size_t t0 = *out.t0;
  switch (id) {
    case TheoremId::AFW_BPFW:
      out.t1 = static_cast<std::size_t>(recs[t0].support_or_face_dim) + t0 - 1;
      break;
    case TheoremId::IFW_STD:
      out.t1 = static_cast<std::size_t>(recs[t0].support_or_face_dim) + t0;
      break;
    default:
      out.t1 = t0;
  }
  return out;
}

std::vector<double> theorem_bound(const RunTrace& trace, TheoremId id, double mu, double theta, double L,
                                  const EnvelopeContext& ctx) {
  require_dense(trace);
  const Regimes reg = detect_regimes(trace, id, mu, theta, L);
  const std::size_t n = trace.records.size();
  const double h0 = gap_at(trace, 0);
  const bool half = is_half(theta);
  std::vector<double> bound(n);

  // (h_ref^(2theta-1) + (1-2theta) mu^(2theta) steps/(c L))^(1/(2theta-1))
  auto sublinear = [&](double h_ref, double steps, double c) {
    if (h_ref <= 0) return 0.0;
    const double base = std::pow(h_ref, 2 * theta - 1) + (1 - 2 * theta) * std::pow(mu, 2 * theta) * steps / (c * L);
    return std::pow(base, 1.0 / (2 * theta - 1));
  };

  std::size_t q = 1;
  if (id == TheoremId::AFW_BPFW) q = 2;
  if (id == TheoremId::IFW) q = static_cast<std::size_t>(ctx.dim);
  if (id == TheoremId::IFW_STD) q = static_cast<std::size_t>(ctx.m);
  if (q == 0) throw InputError("envelope context: dim(C) and m must be positive");

  for (std::size_t t = 0; t < n; ++t) {
    double b = 0.0;
    switch (id) {
      case TheoremId::FW:
        if (half) {
          b = h0 * std::pow(1 - std::min(mu / (2 * L), 0.5), static_cast<double>(t));
        } else if (!reg.t0 || t <= *reg.t0) {
          b = h0 / std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(t, 2000)));
        } else {
          b = sublinear(gap_at(trace, *reg.t0), static_cast<double>(t - *reg.t0), 2.0);
        }
        break;
      case TheoremId::AFW_BPFW:
      case TheoremId::IFW:
      case TheoremId::IFW_STD: {
        const double rate = 1 - std::min(mu / (8 * L), 0.5);
        if (half) {
          b = h0 * std::pow(rate, static_cast<double>(ceil_div(t, q)));
        } else if (!reg.t0 || t <= *reg.t0) {
          b = h0 / std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(ceil_div(t, q), 2000)));
        } else if (t <= *reg.t1) {
          b = gap_at(trace, *reg.t0);
        } else {
          // The constant regime can end past the trace; t1 < t < n here.
          b = sublinear(gap_at(trace, *reg.t1), static_cast<double>(ceil_div(t - *reg.t1, q)), 8.0);
        }
        break;
      }
      case TheoremId::FWIPW:
        if (!reg.t0 || t <= *reg.t0) {
          b = h0 / std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(t, 2000)));
        }
        if (reg.t0 && t >= *reg.t0) {
          const double h_ref = gap_at(trace, *reg.t0);
          const double steps = static_cast<double>(t - *reg.t0);
          const double tail = half ? h_ref * std::pow(std::max(0.0, 1 - mu / (4 * L)), steps)
                                   : sublinear(h_ref, steps, 4.0);
          b = t == *reg.t0 ? std::min(b, tail) : tail;
        }
        break;
    }
    bound[t] = b;
  }
  return bound;
}

EnvelopeReport envelope_check(const RunTrace& trace, TheoremId id, double mu, double theta, double L,
                              const EnvelopeContext& ctx) {
  EnvelopeReport rep;
  rep.regimes = detect_regimes(trace, id, mu, theta, L);
  const std::vector<double> bound = theorem_bound(trace, id, mu, theta, L, ctx);
  const double floor = roundoff_floor(trace);
  for (std::size_t t = 0; t < bound.size(); ++t) {
    const double h = trace.records[t].f_gap;
    ++rep.checked;
    rep.worst_excess = std::max(rep.worst_excess, (h - bound[t]) / std::max(bound[t], floor));
    if (h > bound[t] * (1 + kRel) + floor) {
      if (rep.passed) {
        rep.first_violation = t;
        char buf[200];
        std::snprintf(buf, sizeof buf, "violated at t=%zu: gap %.6g > bound %.6g", t, h, bound[t]);
        rep.message = buf;
      }
      rep.passed = false;
    }
  }
  if (rep.passed) rep.message = "ok (" + std::to_string(rep.checked) + " iterations)";
  return rep;
}

AuditReport audit_progress(const RunTrace& trace, double L) {
  require_dense(trace);
  AuditReport rep;
  rep.name = "progress";
  const double floor = roundoff_floor(trace);
  const auto& recs = trace.records;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const IterRecord& r = recs[i];
    if (r.case_id == 0) continue;
    const double f = r.f_val, fn = recs[i + 1].f_val;
    auto check = [&](double rhs, const char* what) {
      ++rep.checked;
      const double tol = kRel * std::abs(f - rhs) + floor;
      if (fn > rhs + tol) note(rep, r.t, fn - rhs, std::max(std::abs(f - rhs), floor), what);
    };
    if (trace.variant == Variant::FWIPW) {
      check(f + r.eta * r.inner / 2, "f+ <= f + eta<g,d>/2");
      check(f - L * r.eta * r.eta / 2, "f+ <= f - L eta^2/2");
      continue;
    }
    switch (r.case_id) {
      case 1: check(f - r.inner * r.inner / (2 * L), "case 1: f+ <= f - <g,d>^2/(2L)"); break;
      case 2: check(f + r.inner / 2, "case 2: f+ <= f + <g,d>/2"); break;
      case 3: check(f, "case 3: f+ <= f"); break;
      default: break;
    }
  }
  return rep;
}

AuditReport audit_selection(const RunTrace& trace) {
  AuditReport rep;
  rep.name = "selection";
  for (const IterRecord& r : trace.records) {
    if (r.case_id == 0) continue;
    const double scale = std::max({1.0, std::abs(r.inner), std::abs(r.fw_gap)});
    const double tol = kRel * scale + 64 * kEps * scale;
    ++rep.checked;
    if (r.inner > -r.fw_gap + tol) note(rep, r.t, r.inner + r.fw_gap, scale, "<g,d> <= <g,v-x>");
    if (trace.variant == Variant::AFW || trace.variant == Variant::BPFW || trace.variant == Variant::IFW) {
      ++rep.checked;
      if (r.inner > -r.pair_gap / 2 + tol) note(rep, r.t, r.inner + r.pair_gap / 2, scale, "<g,d> <= <g,v-a>/2");
    }
  }
  return rep;
}

AuditReport audit_scaling(const RunTrace& trace, const Polytope& poly, const OptimalSet& xstar,
                          std::size_t max_points) {
  require_dense(trace);
  if (trace.iterates.size() != trace.records.size()) throw InputError("audit_scaling needs stored iterates");
  AuditReport rep;
  rep.name = "scaling";
  const double floor = roundoff_floor(trace);
  const std::size_t n = trace.records.size();
  const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, max_points));
  const bool vertex = trace.variant == Variant::AFW || trace.variant == Variant::BPFW;
  const bool face = trace.variant == Variant::IFW || trace.variant == Variant::FWIPW;
  for (std::size_t i = 0; i < n; i += stride) {
    const IterRecord& r = trace.records[i];
    const double h = r.f_gap;
    if (!(h > floor)) continue;
    const Vec& x = trace.iterates[i];
    // lhs * d >= h, i.e. lhs >= h/d.
    auto check = [&](double lhs, DistanceKind kind, const char* what) {
      const double d = distance_from_set(poly, kind, xstar, x);
      ++rep.checked;
      if (lhs * d < h * (1 - kRel) - floor) note(rep, r.t, h - lhs * d, h, what);
    };
    check(r.fw_gap, DistanceKind::Radial, "fw_gap >= h/r");
    if (vertex) check(r.pair_gap, DistanceKind::Vertex, "<g,a-v> >= h/v");
    if (face) check(r.pair_gap, DistanceKind::Face, "<g,a-v> >= h/f");
  }
  return rep;
}

AuditReport audit_fwipw_sandwich(const RunTrace& trace, double mu, double theta, double L) {
  require_dense(trace);
  AuditReport rep;
  rep.name = "fwipw-sandwich";
  const Regimes reg = detect_regimes(trace, TheoremId::FWIPW, mu, theta, L);
  if (!reg.t0) return rep;
  // h^(1-theta) magnifies the cancellation in f - f*, so the lower side uses
  // the gap net of the roundoff floor.
  const double floor = roundoff_floor(trace);
  for (std::size_t t = *reg.t0; t < trace.records.size(); ++t) {
    const IterRecord& r = trace.records[t];
    if (r.case_id == 0) continue;
    const double h = std::max(0.0, r.f_gap - floor);
    const double lower = std::pow(mu, theta) * std::pow(h, 1 - theta) / (2 * L);
    ++rep.checked;
    if (r.eta > r.gamma * (1 + kRel)) note(rep, t, r.eta - r.gamma, r.gamma, "gamma >= eta");
    ++rep.checked;
    if (r.eta < lower * (1 - kRel)) note(rep, t, lower - r.eta, lower, "eta >= mu^theta h^(1-theta)/(2L)");
  }
  return rep;
}

AuditReport audit_fwipw_steps(const RunTrace& trace) {
  require_dense(trace);
  AuditReport rep;
  rep.name = "fwipw-steps";
  const double floor = roundoff_floor(trace);
  double prev = 1.0;
  bool after_t0 = false;
  const auto& recs = trace.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const IterRecord& r = recs[i];
    if (r.case_id == 0) continue;
    ++rep.checked;
    int e = 0;
    if (!(r.eta > 0) || std::frexp(r.eta, &e) != 0.5) note(rep, r.t, r.eta, 1.0, "eta is not a power of two");
    if (r.eta > prev) note(rep, r.t, r.eta - prev, prev, "eta increased");
    prev = r.eta;
    after_t0 = after_t0 || r.gamma < 1.0;
    if (after_t0 && i + 1 < recs.size() && recs[i + 1].f_val > r.f_val + floor) {
      note(rep, r.t, recs[i + 1].f_val - r.f_val, floor, "f increased after t0");
    }
  }
  return rep;
}

AuditReport audit_drop_steps(const RunTrace& trace) {
  require_dense(trace);
  AuditReport rep;
  rep.name = "drop-steps";
  const auto& recs = trace.records;
  if (trace.variant == Variant::AFW || trace.variant == Variant::BPFW) {
    long good = 0, drop = 0;
    for (const IterRecord& r : recs) {
      if (r.case_id == 0) continue;
      (r.case_id == 3 ? drop : good)++;
      ++rep.checked;
      if (drop > good + trace.initial_support - 1) {
        note(rep, r.t, static_cast<double>(drop - good - trace.initial_support + 1), 1.0,
             "case-3 count exceeds case-1/2 count + |S0| - 1");
      }
    }
  } else if (trace.variant == Variant::IFW) {
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
      if (recs[i].case_id != 3) continue;
      ++rep.checked;
      if (recs[i + 1].support_or_face_dim > recs[i].support_or_face_dim - 1) {
        note(rep, recs[i].t, 1.0, 1.0, "face dimension did not drop on a case-3 step");
      }
    }
  }
  return rep;
}

AuditReport audit_monotone(const RunTrace& trace) {
  require_dense(trace);
  AuditReport rep;
  rep.name = "monotone";
  const double floor = roundoff_floor(trace);
  const auto& recs = trace.records;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    ++rep.checked;
    if (recs[i + 1].f_val > recs[i].f_val + floor) {
      note(rep, recs[i].t, recs[i + 1].f_val - recs[i].f_val, floor, "f increased");
    }
  }
  return rep;
}

}  // namespace polyfw
