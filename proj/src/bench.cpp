#include "polyfw/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>

namespace polyfw {

namespace {

double env_L(const RunConfig& cfg, double curvature) {
  return cfg.step.kind != StepKind::LineSearch && cfg.step.L > 0 ? cfg.step.L : curvature;
}

Experiment make(std::string name, Polytope poly, Objective f, Variant variant, StepKind step, std::size_t iters,
                TheoremId theorem, BoundMode bound) {
  Experiment ex{std::move(name), std::move(poly), std::move(f), RunConfig{}, theorem, bound};
  ex.cfg.variant = variant;
  ex.cfg.step.kind = step;
  ex.cfg.max_iters = iters;
  ex.cfg.gap_tol = 1e-14;
  return ex;
}

Mat from_rows(int n, std::initializer_list<double> vals) {
  Mat M(n, n);
  auto it = vals.begin();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = *it++;
  }
  return M;
}

Vec vec(std::initializer_list<double> vals) {
  Vec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

// Strongly convex quadratic over the 3-simplex whose minimizer lies in the
// relative interior of the edge x3 = 0. Runs start at e3, off that edge, so
// vanilla FW has to zig-zag towards it.
std::vector<Experiment> wolfe_suite() {
  const Polytope s3 = Polytope::simplex(3);
  const Mat Q = from_rows(3, {4.0, 1.5, 0.0, 1.5, 1.0, 0.0, 0.0, 0.0, 2.0});
  const Objective f = quadratic(Q, -Q * vec({0.35, 0.75, -0.1}), s3);
  std::vector<Experiment> out;
  out.push_back(make("wolfe", s3, f, Variant::FW, StepKind::LineSearch, 100000, TheoremId::FW, BoundMode::Radial));
  out.push_back(make("wolfe", s3, f, Variant::AFW, StepKind::ShortStep, 1000, TheoremId::AFW_BPFW, BoundMode::Vertex));
  out.push_back(make("wolfe", s3, f, Variant::BPFW, StepKind::ShortStep, 1000, TheoremId::AFW_BPFW, BoundMode::Vertex));
  out.push_back(make("wolfe", s3, f, Variant::IFW, StepKind::ShortStep, 1000, TheoremId::IFW_STD, BoundMode::Face));
  for (Experiment& ex : out) {
    ex.cfg.x0 = vec({0.0, 0.0, 1.0});
    ex.fit_from = ex.cfg.variant == Variant::FW ? 100 : 10;
  }
  return out;
}

std::vector<Experiment> interior_suite() {
  std::vector<Experiment> out;
  const Polytope box = Polytope::unit_box(2);
  const Objective fb = quadratic(2.0 * Mat::Identity(2, 2), -2.0 * vec({0.45, 0.45}), box);
  Experiment ex = make("interior-box", box, fb, Variant::FW, StepKind::ShortStep, 5000, TheoremId::FW, BoundMode::Radial);
  // An interior start skips the fast initial phase, so the run sits on the
  // asymptotic rate from the first iteration.
  ex.cfg.x0 = vec({0.6, 0.4});
  out.push_back(ex);
  out.push_back(make("interior-box", box, fb, Variant::IFW, StepKind::ShortStep, 5000, TheoremId::IFW, BoundMode::Face));

  const Polytope s3 = Polytope::simplex(3);
  const Objective f3 = quadratic(2.0 * Mat::Identity(3, 3), -2.0 * vec({0.3, 0.3, 0.4}), s3);
  out.push_back(make("interior-simplex", s3, f3, Variant::FW, StepKind::ShortStep, 5000, TheoremId::FW,
                     BoundMode::Radial));
  out.push_back(make("interior-simplex", s3, f3, Variant::AFW, StepKind::ShortStep, 5000, TheoremId::AFW_BPFW,
                     BoundMode::Vertex));
  return out;
}

std::vector<Experiment> theta_suite() {
  std::vector<Experiment> out;
  const Polytope s3 = Polytope::simplex(3);
  const Vec c = vec({0.3, 0.3, 0.4});
  for (double p : {2.0, 3.0, 4.0}) {
    char name[32];
    std::snprintf(name, sizeof name, "powdist-p%g", p);
    Experiment ex = make(name, s3, power_distance(c, p, s3), Variant::FW, StepKind::ShortStep, p == 2.0 ? 5000 : 100000,
                         TheoremId::FW, BoundMode::Radial);
    // The sublinear runs approach their asymptotic slope slowly.
    ex.fit_from = p == 2.0 ? 10 : 1000;
    out.push_back(ex);
  }
  return out;
}

std::vector<Experiment> fwipw_suite() {
  std::vector<Experiment> out;
  const Polytope s3 = Polytope::simplex(3);
  const Objective f3 = quadratic(2.0 * Mat::Identity(3, 3), -2.0 * vec({0.5, 0.3, 0.2}), s3);
  out.push_back(make("fwipw-simplex3", s3, f3, Variant::FWIPW, StepKind::TargetPow2, 1000, TheoremId::FWIPW,
                     BoundMode::Face));

  const Polytope s6 = Polytope::simplex(6);
  const Objective f6 = quadratic(2.0 * Mat::Identity(6, 6), -2.0 * vec({0.5, 0.3, 0.2, -0.2, -0.3, -0.1}), s6);
  Experiment ex = make("fwipw-simplex6", s6, f6, Variant::FWIPW, StepKind::TargetPow2, 1000, TheoremId::FWIPW,
                       BoundMode::Face);
  out.push_back(ex);
  ex.bound = BoundMode::SimplexCard;
  ex.name = "fwipw-simplex6-card";
  out.push_back(ex);
  // Sublinear, so the full 1000 iterations are used.
  out.push_back(make("fwipw-powdist-p4", s6, power_distance(s6.centroid(), 4.0, s6), Variant::FWIPW,
                     StepKind::TargetPow2, 1000, TheoremId::FWIPW, BoundMode::Face));
  return out;
}

}  // namespace

bool ExperimentResult::all_passed() const {
  if (!error.empty()) return false;
  for (const AuditReport& a : audits) {
    if (!a.passed()) return false;
  }
  return !certified || envelope.passed;
}

ExperimentResult run_experiment(const Experiment& ex) {
  ExperimentResult res;
  res.name = ex.name;
  res.variant = to_string(ex.cfg.variant);
  try {
    const Objective& f = ex.f;
    if (!f.f_star || !f.optimal_set || !f.holder) throw InputError("experiment needs f*, X* and a Hölder certificate");
    RunConfig cfg = ex.cfg;
    cfg.store_iterates = true;
    cfg.record_every = 1;
    const double curvature = curvature_constant(f, ex.poly);
    if (cfg.step.kind != StepKind::LineSearch && !(cfg.step.L > 0)) cfg.step.L = curvature;
    res.L = env_L(cfg, curvature);

    const ErrorBoundCert cert = derive_error_bound(*f.holder, ex.poly, ex.bound, *f.optimal_set);
    res.theta = cert.theta;
    res.mu = cert.mu;
    res.certified = cert.certified;
    res.note = cert.note;

    res.trace = run(ex.poly, f, cfg);

    const double floor = 1e-13 * std::max(1.0, std::abs(*f.f_star));
    try {
      res.fit = fit_rate(res.trace, ex.fit_from, last_above(res.trace, floor));
    } catch (const InputError&) {
      // Too few points above the floor: converged within the burn-in.
    }

    if (res.certified) {
      const EnvelopeContext ctx{ex.poly.affine_dim(), ex.poly.num_equalities()};
      res.envelope = envelope_check(res.trace, ex.theorem, res.mu, res.theta, res.L, ctx);
      res.negative_control = envelope_check(res.trace, ex.theorem, 10.0 * res.mu, res.theta, res.L, ctx);
    }

    res.audits.push_back(audit_progress(res.trace, res.L));
    res.audits.push_back(audit_selection(res.trace));
    res.audits.push_back(audit_scaling(res.trace, ex.poly, *f.optimal_set));
    switch (ex.cfg.variant) {
      case Variant::FWIPW:
        res.audits.push_back(audit_fwipw_steps(res.trace));
        if (res.certified) res.audits.push_back(audit_fwipw_sandwich(res.trace, res.mu, res.theta, res.L));
        break;
      case Variant::FW:
        res.audits.push_back(audit_monotone(res.trace));
        break;
      default:
        res.audits.push_back(audit_monotone(res.trace));
        res.audits.push_back(audit_drop_steps(res.trace));
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

std::vector<std::string> suite_names() { return {"wolfe", "interior", "theta-sweep", "fwipw"}; }

std::vector<Experiment> make_suite(const std::string& name) {
  if (name == "wolfe") return wolfe_suite();
  if (name == "interior") return interior_suite();
  if (name == "theta-sweep") return theta_suite();
  if (name == "fwipw") return fwipw_suite();
  throw InputError("unknown suite '" + name + "'");
}

std::vector<ExperimentResult> run_suite(const std::vector<Experiment>& experiments) {
  std::vector<std::future<ExperimentResult>> jobs;
  jobs.reserve(experiments.size());
  for (const Experiment& ex : experiments) {
    jobs.push_back(std::async(std::launch::async, [&ex] { return run_experiment(ex); }));
  }
  std::vector<ExperimentResult> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

bool write_suite_report(const std::vector<ExperimentResult>& results, const std::string& dir, std::ostream& log) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream txt(fs::path(dir) / "summary.txt");
  std::ofstream csv(fs::path(dir) / "summary.csv");
  csv << "instance,variant,theta,mu,L,fitted_exponent,fitted_ratio,regime,r2,envelope,negative_control,audits,status\n";
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ExperimentResult& r = results[i];
    const std::string stem = r.name + "_" + r.variant + (i > 0 && results[i - 1].name == r.name &&
                                                                 results[i - 1].variant == r.variant
                                                             ? "_" + std::to_string(i)
                                                             : "");
    {
      std::ofstream trace(fs::path(dir) / (stem + ".csv"));
      write_trace_csv(r.trace, trace);
    }
    std::string audits = "ok";
    for (const AuditReport& a : r.audits) {
      if (!a.passed()) audits = a.name + ": " + a.first;
    }
    const char* env = !r.certified ? "n/a" : r.envelope.passed ? "pass" : "fail";
    const char* neg = !r.certified ? "n/a" : r.negative_control.passed ? "pass" : "fail";
    const bool good = r.all_passed();
    ok = ok && good;

    std::string fit = "none";
    if (r.fit) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s(%.4g)", to_string(r.fit->regime),
                    r.fit->regime == Regime::Linear ? r.fit->ratio : r.fit->exponent);
      fit = buf;
    }
    char line[512];
    std::snprintf(line, sizeof line, "%-22s %-6s theta=%.3g mu=%.4g L=%.4g fit=%s env=%s neg=%s audits=%s%s%s\n",
                  r.name.c_str(), r.variant.c_str(), r.theta, r.mu, r.L, fit.c_str(), env, neg, audits.c_str(),
                  r.error.empty() ? "" : " error=", r.error.c_str());
    txt << line;
    log << line;
    std::snprintf(line, sizeof line, "%s,%s,%.6g,%.6g,%.6g,%.6g,%.6g,%s,%.4f,%s,%s,%s,%s\n", r.name.c_str(),
                  r.variant.c_str(), r.theta, r.mu, r.L, r.fit ? r.fit->exponent : NAN, r.fit ? r.fit->ratio : NAN,
                  r.fit ? to_string(r.fit->regime) : "none", r.fit ? r.fit->r2 : NAN, env, neg,
                  audits == "ok" ? "pass" : "fail", good ? "ok" : "FAIL");
    csv << line;
  }
  return ok;
}

}  // namespace polyfw
