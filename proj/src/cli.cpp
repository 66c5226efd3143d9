#include "polyfw/cli.hpp"

#include "polyfw/geometry.hpp"
#include "polyfw/harness.hpp"
#include "polyfw/polytope_io.hpp"
#include "polyfw/solvers.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace polyfw {

namespace {

struct CliConfig {
  std::string polytope;
  std::string objective;
  std::string variant = "fw";
  std::string step;  // empty: ss, or pow2 for fwipw
  double tol = 1e-8;
  std::size_t max_iters = 1000;
  std::size_t record_every = 1;
  std::string x0 = "vertex";
  bool audit = false;
  std::string trace_path;  // empty: stdout
  std::uint64_t seed = 0;

  std::string op;
  std::string y, x, face, face2;
  std::string norm = "l2";

  std::string suite;
  std::string out_dir = "bench_out";
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::map<std::string, std::string> split_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected KEY=VALUE in objective spec, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InputError("bad number for " + what + ": '" + s + "'");
  return v;
}

Norm parse_norm(const std::string& s) {
  if (s == "l1") return Norm::L1;
  if (s == "l2") return Norm::L2;
  if (s == "linf") return Norm::LInf;
  throw InputError("unknown norm '" + s + "'");
}

StepKind parse_step(const std::string& s) {
  if (s == "ls") return StepKind::LineSearch;
  if (s == "ss") return StepKind::ShortStep;
  if (s == "pow2") return StepKind::TargetPow2;
  throw InputError("unknown step rule '" + s + "'");
}

Vec point_arg(const std::string& text, const Polytope& poly, const char* flag) {
  if (text.empty()) throw InputError(std::string("missing ") + flag);
  Vec v = read_vector(text);
  if (v.size() != poly.ambient_dim()) throw InputError(std::string(flag) + " has the wrong dimension");
  return v;
}

void check_reports(const std::vector<AuditReport>& reports, std::ostream& err, bool& ok) {
  for (const AuditReport& a : reports) {
    if (a.passed()) continue;
    ok = false;
    err << "audit " << a.name << " failed (" << a.violations << "/" << a.checked << "): " << a.first << "\n";
  }
}

int cmd_solve(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const Polytope poly = load_polytope(c.polytope);
  const Objective f = parse_objective(c.objective, poly);

  RunConfig cfg;
  cfg.variant = parse_variant(c.variant);
  cfg.step.kind = parse_step(!c.step.empty() ? c.step : cfg.variant == Variant::FWIPW ? "pow2" : "ss");
  if (cfg.step.kind != StepKind::LineSearch) cfg.step.L = curvature_constant(f, poly);
  cfg.max_iters = c.max_iters;
  cfg.gap_tol = c.tol;
  cfg.record_every = c.record_every;
  if (c.x0 == "random") {
    std::mt19937_64 rng(c.seed);
    cfg.x0 = sample_point(poly, rng);
  } else if (c.x0 != "vertex") {
    cfg.x0 = point_arg(c.x0, poly, "--x0");
  }

  const RunTrace trace = run(poly, f, cfg);
  if (c.trace_path.empty()) {
    write_trace_csv(trace, out);
  } else {
    std::ofstream file(c.trace_path);
    if (!file) throw InputError("cannot write '" + c.trace_path + "'");
    write_trace_csv(trace, file);
  }
  const IterRecord& last = trace.records.back();
  err << to_string(cfg.variant) << " " << to_string(cfg.step.kind) << ": " << to_string(trace.reason)
      << " at t=" << last.t << ", f=" << fmt(last.f_val) << ", fw_gap=" << fmt(last.fw_gap) << "\n";

  bool ok = true;
  if (c.audit) {
    const double L = cfg.step.L > 0 ? cfg.step.L : curvature_constant(f, poly);
    std::vector<AuditReport> reports{audit_selection(trace)};
    if (cfg.record_every == 1) reports.push_back(audit_progress(trace, L));
    if (trace.f_star) {
      if (cfg.variant == Variant::FWIPW) {
        reports.push_back(audit_fwipw_steps(trace));
      } else {
        reports.push_back(audit_monotone(trace));
      }
    }
    if (cfg.variant != Variant::FW && cfg.variant != Variant::FWIPW && cfg.record_every == 1) {
      reports.push_back(audit_drop_steps(trace));
    }
    check_reports(reports, err, ok);
  }
  return ok ? 0 : 1;
}

int cmd_geometry(const CliConfig& c, std::ostream& out) {
  const Polytope poly = load_polytope(c.polytope);
  const std::string& op = c.op;
  if (op == "radial" || op == "vertex" || op == "face") {
    const DistanceKind kind = op == "radial" ? DistanceKind::Radial
                              : op == "vertex" ? DistanceKind::Vertex
                                               : DistanceKind::Face;
    out << fmt(distance(poly, kind, point_arg(c.y, poly, "--y"), point_arg(c.x, poly, "--x"))) << "\n";
  } else if (op == "phi" || op == "phibar") {
    if (c.face.empty()) throw InputError("missing --face");
    const Face F = parse_face(c.face, poly);
    out << fmt(op == "phi" ? inner_facial_distance(poly, F) : outer_facial_distance(poly, F)) << "\n";
  } else if (op == "lb") {
    if (c.face.empty()) throw InputError("missing --face");
    const Norm norm = parse_norm(c.norm);
    const Face F = parse_face(c.face, poly);
    if (!c.face2.empty()) {
      out << fmt(facial_lower_bound_outer(poly, F, parse_face(c.face2, poly), norm)) << "\n";
      return 0;
    }
    out << "phi_lb " << fmt(inner_facial_lower_bound(poly, F, norm)) << "\n";
    out << "phibar_lb " << fmt(outer_facial_lower_bound(poly, F, norm)) << "\n";
    if (poly.is_standard_form() && F.dim < poly.affine_dim()) {
      out << "phi_std " << fmt(std_form_inner_bound(poly, F, norm)) << "\n";
      out << "phibar_std " << fmt(std_form_outer_bound(poly, F, norm)) << "\n";
    }
  } else if (op == "sigma") {
    const Vec s = sigma_profile(poly);
    for (Eigen::Index i = 0; i < s.size(); ++i) out << fmt(s(i)) << "\n";
  } else {
    throw InputError("unknown op '" + op + "'");
  }
  return 0;
}

int cmd_bench(const CliConfig& c, std::ostream& out) {
  std::vector<Experiment> experiments;
  if (c.suite == "all") {
    for (const std::string& name : suite_names()) {
      for (Experiment& ex : make_suite(name)) experiments.push_back(std::move(ex));
    }
  } else {
    experiments = make_suite(c.suite);
  }
  const std::vector<ExperimentResult> results = run_suite(experiments);
  return write_suite_report(results, c.out_dir, out) ? 0 : 1;
}

}  // namespace

Objective parse_objective(const std::string& spec, const Polytope& poly) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const auto params = split_params(colon == std::string::npos ? "" : spec.substr(colon + 1));
  const int n = poly.ambient_dim();
  auto vec = [&](const std::string& key) {
    Vec v = read_vector(params.at(key));
    if (v.size() != n) throw InputError("objective parameter " + key + " has the wrong dimension");
    return v;
  };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : params) {
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) throw InputError("unknown parameter '" + k + "' for objective " + kind);
    }
  };

  if (kind == "quad") {
    allow({"Q", "c", "target"});
    Mat Q = 2.0 * Mat::Identity(n, n);
    if (params.count("Q")) {
      Q = read_matrix(params.at("Q"));
      if (Q.rows() != n || Q.cols() != n) throw InputError("Q has the wrong shape");
    }
    if (params.count("c") && params.count("target")) throw InputError("give c or target, not both");
    Vec c = Vec::Zero(n);
    if (params.count("c")) c = vec("c");
    if (params.count("target")) c = -Q * vec("target");
    return quadratic(Q, c, poly);
  }
  if (kind == "powdist") {
    allow({"center", "p"});
    const Vec center = params.count("center") ? vec("center") : poly.centroid();
    const double p = params.count("p") ? parse_double(params.at("p"), "p") : 2.0;
    return power_distance(center, p, poly);
  }
  if (kind == "linear") {
    allow({"c"});
    if (!params.count("c")) throw InputError("linear objective needs c");
    return linear(vec("c"), poly);
  }
  throw InputError("unknown objective kind '" + kind + "'");
}

Face parse_face(const std::string& spec, const Polytope& poly) {
  if (spec == "C") return poly.minimal_face(poly.centroid());
  if (spec.rfind("point:", 0) == 0) {
    const Vec x = read_vector(spec.substr(6));
    if (x.size() != poly.ambient_dim() || !poly.contains(x)) throw InputError("face point is not in the polytope");
    return poly.minimal_face(x);
  }
  if (spec.rfind("rows:", 0) == 0) {
    Face F;
    for (double r : read_vector(spec.substr(5))) {
      if (r != std::floor(r) || r < 0 || r >= static_cast<double>(poly.D().rows())) {
        throw InputError("bad row index in face spec");
      }
      F.binding.push_back(static_cast<int>(r));
    }
    const std::uint64_t mask = face_mask(poly, F);
    if (mask == 0) throw InputError("face spec selects the empty face");
    return face_from_mask(poly, mask);
  }
  if (spec.size() > 1 && spec[0] == 'v') {
    const int k = static_cast<int>(parse_double(spec.substr(1), "vertex index"));
    const auto& V = poly.vertices();
    if (k < 0 || k >= static_cast<int>(V.size())) throw InputError("vertex index out of range");
    return poly.minimal_face(V[k]);
  }
  throw InputError("bad face spec '" + spec + "'");
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Frank-Wolfe variants over polytopes"};
  app.require_subcommand(1);

  const std::vector<std::string> variants{"fw", "afw", "bpfw", "ifw", "fwipw"};
  auto* solve = app.add_subcommand("solve", "run one solver and write its trace CSV");
  solve->add_option("--polytope", c.polytope, "built-in name or polytope file")->required();
  solve->add_option("--objective", c.objective, "objective spec, e.g. powdist:p=4")->required();
  solve->add_option("--variant", c.variant)->check(CLI::IsMember(variants));
  solve->add_option("--step", c.step)->check(CLI::IsMember({"ls", "ss", "pow2"}));
  solve->add_option("--tol", c.tol, "stop when the FW gap is at most this")->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", c.max_iters);
  solve->add_option("--record-every", c.record_every)->check(CLI::PositiveNumber);
  solve->add_option("--x0", c.x0, "'vertex', 'random' (uses --seed) or a point");
  solve->add_option("--trace", c.trace_path, "CSV output path (default stdout)");
  solve->add_option("--seed", c.seed);
  solve->add_flag("--audit", c.audit, "run the per-iteration audits; exit 1 on a violation");

  auto* geometry = app.add_subcommand("geometry", "distance functions, facial distances and bounds");
  geometry->add_option("--polytope", c.polytope)->required();
  geometry->add_option("--op", c.op)
      ->required()
      ->check(CLI::IsMember({"radial", "vertex", "face", "phi", "phibar", "lb", "sigma"}));
  geometry->add_option("--y", c.y);
  geometry->add_option("--x", c.x);
  geometry->add_option("--face", c.face, "C, vK, rows:i;j or point:<v>");
  geometry->add_option("--face2", c.face2, "second face for the pairwise lower bound");
  geometry->add_option("--norm", c.norm)->check(CLI::IsMember({"l1", "l2", "linf"}));

  auto* bench = app.add_subcommand("bench", "run a bench suite and write traces and a summary");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  bench->add_option("--suite", c.suite)->required()->check(CLI::IsMember(suites));
  bench->add_option("--out", c.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(c, out, err);
    if (*geometry) return cmd_geometry(c, out);
    return cmd_bench(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace polyfw
