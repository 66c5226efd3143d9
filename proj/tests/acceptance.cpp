// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion (detail
// lines are indented) and exits nonzero if any criterion fails.

#include "oracles.hpp"

#include "polyfw/geometry.hpp"
#include "polyfw/harness.hpp"
#include "polyfw/polytope_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

using namespace polyfw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vec vec(std::initializer_list<double> vals) {
  Vec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

Polytope random_vrep(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  // Points on an ellipsoid are all extreme.
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec p(dim);
    for (int j = 0; j < dim; ++j) p[j] = N(rng);
    p.normalize();
    for (int j = 0; j < dim; ++j) p[j] *= 1.0 - 0.3 * j;
    pts.push_back(p);
  }
  return Polytope::from_vertices(pts);
}

// {x + s = 1, x, s >= 0} in R^4: the unit square as a simplex-like polytope.
Polytope std_square() {
  Mat A(2, 4);
  A << 1, 0, 1, 0, 0, 1, 0, 1;
  return Polytope::standard_form(A, vec({1.0, 1.0}));
}

std::vector<std::uint64_t> face_masks(const Polytope& poly) {
  std::vector<std::uint64_t> out;
  for (const FaceRecord& r : enumerate_faces(poly)) out.push_back(r.mask);
  return out;
}

std::uint64_t all_mask(const Polytope& poly) {
  const std::size_t n = poly.vertices().size();
  return n == 64 ? ~0ull : (1ull << n) - 1;
}

// ---------------------------------------------------------------- 1
Verdict criterion1() {
  Verdict v;
  struct Case {
    const char* name;
    double inner;
  };
  for (const Case& c : {Case{"box2", std::sqrt(2.0) / 2}, Case{"box_2x1", 2 * std::sqrt(5.0) / 5}}) {
    const Polytope poly = named_polytope(c.name);
    const Face F = poly.minimal_face(Vec::Zero(2));
    auto t0 = Clock::now();
    const double phi = inner_facial_distance(poly, F);
    const double t_phi = seconds_since(t0);
    t0 = Clock::now();
    const double phibar = outer_facial_distance(poly, F);
    const double t_phibar = seconds_since(t0);
    v.check(std::abs(phi - c.inner) <= 1e-9, fmt("%s inner = %.12f (want %.12f), %.3fs", c.name, phi, c.inner, t_phi));
    v.check(std::abs(phibar - 1.0) <= 1e-9, fmt("%s outer = %.12f (want 1), %.3fs", c.name, phibar, t_phibar));
    v.check(t_phi < 1.0 && t_phibar < 1.0, fmt("%s runtime under 1s", c.name));
  }
  return v;
}

// ---------------------------------------------------------------- 2
Verdict criterion2() {
  Verdict v;
  std::vector<std::pair<std::string, Polytope>> polys;
  for (const char* name : {"simplex3", "simplex4", "box2", "box3", "box_2x1", "trunc3", "l1ball2", "l1ball3"}) {
    polys.emplace_back(name, named_polytope(name));
  }
  polys.emplace_back("std-square", std_square());
  polys.emplace_back("vrep2-a", random_vrep(2, 9, 11));
  polys.emplace_back("vrep2-b", random_vrep(2, 12, 12));
  polys.emplace_back("vrep3-a", random_vrep(3, 8, 13));
  polys.emplace_back("vrep3-b", random_vrep(3, 12, 14));

  std::size_t checks = 0, std_checks = 0;
  double worst = -1e300;
  for (const auto& [name, poly] : polys) {
    const auto& verts = poly.vertices();
    if (verts.size() > 12 && name.rfind("vrep", 0) == 0) {
      v.check(false, name + " has more than 12 vertices");
      continue;
    }
    const std::vector<std::uint64_t> faces = face_masks(poly);
    const std::uint64_t all = all_mask(poly);
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> dist;
    auto d = [&](std::uint64_t G, std::uint64_t H) {
      auto it = dist.find({G, H});
      if (it != dist.end()) return it->second;
      const double r = oracle::hull_distance(oracle::columns(verts, G), oracle::columns(verts, H));
      dist[{G, H}] = r;
      return r;
    };
    bool ok = true;
    auto sound = [&](double bound, double exact, const std::string& what) {
      ++checks;
      worst = std::max(worst, bound - exact);
      if (bound > exact + 1e-9) {
        ok = false;
        v.check(false, fmt("%s: %s bound %.12g exceeds exact %.12g", name.c_str(), what.c_str(), bound, exact));
      }
    };
    for (std::uint64_t F : faces) {
      const Face face = face_from_mask(poly, F);
      if (F != all) {
        sound(facial_lower_bound_inner(poly, face), d(F, all & ~F), "face-vs-complement");
      }
      for (std::uint64_t G : faces) {
        if ((F & G) == 0) sound(facial_lower_bound_outer(poly, face, face_from_mask(poly, G)), d(F, G), "face-vs-face");
      }
      double phi = 1e300, phibar = 1e300;
      for (std::uint64_t G : faces) {
        if ((G & ~F) != 0) continue;
        if (G != all) phi = std::min(phi, d(G, all & ~G));
        for (std::uint64_t H : faces) {
          if ((G & H) == 0) phibar = std::min(phibar, d(G, H));
        }
      }
      sound(inner_facial_lower_bound(poly, face), phi, "inner facial");
      sound(outer_facial_lower_bound(poly, face), phibar, "outer facial");
      if (poly.is_simplex_like() && F != all) {
        const double s_in = std_form_inner_bound(poly, face);
        const double s_out = std_form_outer_bound(poly, face);
        sound(s_in, phi, "std-form inner");
        sound(s_out, phibar, "std-form outer");
        const double general = facial_lower_bound_inner(poly, face);
        ++std_checks;
        if (std::abs(s_in - general) > 1e-12) {
          ok = false;
          v.check(false, fmt("%s: std-form shortcut %.15g differs from general %.15g", name.c_str(), s_in, general));
        }
      }
    }
    v.info(fmt("%-10s %2zu vertices %3zu faces %s", name.c_str(), verts.size(), faces.size(), ok ? "sound" : "UNSOUND"));
  }
  v.check(polys.size() >= 10, fmt("%zu polytopes, %zu bound checks, max(bound - exact) = %.3g", polys.size(), checks, worst));
  v.check(std_checks > 0, fmt("%zu std-form shortcut comparisons on simplex-like instances", std_checks));
  return v;
}

// ---------------------------------------------------------------- 3
Verdict criterion3() {
  Verdict v;
  std::vector<std::pair<std::string, Polytope>> polys;
  for (const char* name : {"simplex3", "box2", "box_2x1", "trunc3", "l1ball2", "box3"}) {
    polys.emplace_back(name, named_polytope(name));
  }
  polys.emplace_back("vrep2-a", random_vrep(2, 9, 11));
  std::mt19937_64 rng(3);
  for (const auto& [name, poly] : polys) {
    std::size_t order_bad = 0, zero_bad = 0, vertex_bad = 0;
    double worst = -1e300;
    for (int k = 0; k < 200; ++k) {
      const Vec x = sample_point(poly, rng);
      const Vec y = k % 10 == 0 ? x : sample_point(poly, rng);
      const bool same = (y - x).norm() == 0.0;
      const double r = radial_distance(poly, y, x);
      const double vd = vertex_distance(poly, y, x);
      const double f = face_distance(poly, y, x);
      worst = std::max({worst, f - vd, vd - r, r - 1.0, -f});
      if (f > vd + 1e-9 || vd > r + 1e-9 || r > 1.0 + 1e-9 || f < -1e-9) ++order_bad;
      if (same != (r == 0.0) || same != (vd == 0.0) || same != (f == 0.0)) ++zero_bad;
    }
    for (const Vec& y : poly.vertices()) {
      for (int k = 0; k < 10; ++k) {
        const Vec x = sample_point(poly, rng);
        if ((x - y).norm() == 0.0) continue;
        if (radial_distance(poly, y, x) != 1.0) ++vertex_bad;
      }
    }
    v.check(order_bad == 0 && zero_bad == 0 && vertex_bad == 0,
            fmt("%-9s ordering violations %zu, zero-law violations %zu, vertex-law violations %zu, worst %.3g",
                name.c_str(), order_bad, zero_bad, vertex_bad, worst));
  }
  return v;
}

// ---------------------------------------------------------------- runs
struct Run {
  Experiment ex;
  ExperimentResult res;
  double seconds = 0.0;
};

std::vector<Run>& runs() {
  static std::vector<Run> all = [] {
    std::vector<Run> out;
    for (const std::string& suite : suite_names()) {
      for (Experiment& ex : make_suite(suite)) {
        const auto t0 = Clock::now();
        ExperimentResult res = run_experiment(ex);
        out.push_back({std::move(ex), std::move(res), seconds_since(t0)});
      }
    }
    return out;
  }();
  return all;
}

const Run& find_run(const std::string& name, const std::string& variant) {
  for (const Run& r : runs()) {
    if (r.res.name == name && r.res.variant == variant) return r;
  }
  throw std::runtime_error("no run " + name + "/" + variant);
}

// ---------------------------------------------------------------- 4
Verdict criterion4() {
  Verdict v;
  std::size_t certified = 0;
  for (const Run& r : runs()) {
    if (!r.res.error.empty()) {
      v.check(false, r.res.name + "/" + r.res.variant + " error: " + r.res.error);
      continue;
    }
    if (!r.res.certified) continue;
    ++certified;
    std::string line = fmt("%-20s %-6s", r.res.name.c_str(), r.res.variant.c_str());
    bool ok = true;
    for (const AuditReport& a : r.res.audits) {
      if (a.name != "progress" && a.name != "selection" && a.name != "scaling" && a.name != "fwipw-sandwich") continue;
      line += fmt(" %s %zu/%zu", a.name.c_str(), a.checked - a.violations, a.checked);
      ok = ok && a.passed();
      if (!a.passed()) line += " (" + a.first + ")";
    }
    v.check(ok, line);
  }
  v.check(certified >= 6, fmt("%zu certified instance x variant runs", certified));
  return v;
}

// ---------------------------------------------------------------- 5
Verdict criterion5() {
  Verdict v;
  struct Item {
    const char* label;
    const char* name;
    const char* variant;
    std::optional<TheoremId> theorem;  // override of the run's theorem
  };
  const Item items[] = {
      {"FW theta=1/2", "interior-box", "fw", {}},
      {"FW theta=1/4", "powdist-p4", "fw", {}},
      {"AFW theta=1/2", "wolfe", "afw", {}},
      {"BPFW theta=1/2", "wolfe", "bpfw", {}},
      {"IFW theta=1/2", "wolfe", "ifw", TheoremId::IFW},
      {"IFW std form theta=1/2", "wolfe", "ifw", TheoremId::IFW_STD},
      {"FWIPW theta=1/2", "fwipw-simplex3", "fwipw", {}},
  };
  for (const Item& it : items) {
    const Run& r = find_run(it.name, it.variant);
    const TheoremId id = it.theorem.value_or(r.ex.theorem);
    const EnvelopeContext ctx{r.ex.poly.affine_dim(), r.ex.poly.num_equalities()};
    if (!r.res.certified) {
      v.check(false, fmt("%-24s not certified: %s", it.label, r.res.note.c_str()));
      continue;
    }
    const EnvelopeReport env = envelope_check(r.res.trace, id, r.res.mu, r.res.theta, r.res.L, ctx);
    const EnvelopeReport neg = envelope_check(r.res.trace, id, 10 * r.res.mu, r.res.theta, r.res.L, ctx);
    v.check(env.passed, fmt("%-24s envelope holds on %zu iterations (worst excess %.3g)", it.label, env.checked,
                            env.worst_excess));
    v.check(!neg.passed, fmt("%-24s 10x mu envelope %s", it.label,
                             neg.passed ? "still holds (negative control not tripped)"
                                        : fmt("violated first at t=%zu", *neg.first_violation).c_str()));
    v.check(r.seconds < 30.0, fmt("%-24s runtime %.2fs", it.label, r.seconds));
  }
  return v;
}

// ---------------------------------------------------------------- 6
Verdict criterion6() {
  Verdict v;
  const Run& fw = find_run("wolfe", "fw");
  const RateFit fit = fit_rate(fw.res.trace, 100, 100000);
  v.check(std::abs(fit.exponent + 1.0) <= 0.2,
          fmt("FW line-search exponent over [1e2, 1e5] = %.4f (r2 %.4f)", fit.exponent, fit.r2_power));
  for (const char* variant : {"afw", "bpfw", "ifw"}) {
    const Run& r = find_run("wolfe", variant);
    std::optional<std::size_t> hit;
    for (const IterRecord& rec : r.res.trace.records) {
      if (rec.f_gap <= 1e-10) {
        hit = rec.t;
        break;
      }
    }
    v.check(hit && *hit <= 1000, fmt("%-5s gap <= 1e-10 at t=%s", variant, hit ? std::to_string(*hit).c_str() : "never"));
    const bool linear = r.res.fit && r.res.fit->regime == Regime::Linear && r.res.fit->r2 >= 0.95;
    v.check(linear, r.res.fit ? fmt("%-5s fit %s, ratio %.4f, r2 %.4f over [%zu, %zu]", variant,
                                    to_string(r.res.fit->regime), r.res.fit->ratio, r.res.fit->r2, r.res.fit->t_lo,
                                    r.res.fit->t_hi)
                              : fmt("%-5s no rate fit", variant));
  }
  return v;
}

// ---------------------------------------------------------------- 7
Verdict criterion7() {
  Verdict v;
  const Run& r = find_run("powdist-p4", "fw");
  const RateFit fit = fit_rate(r.res.trace, 1000, 100000);
  v.check(std::abs(fit.exponent + 2.0) <= 0.3, fmt("p=4 exponent over [1e3, 1e5] = %.4f (target -2, r2 %.4f)",
                                                  fit.exponent, fit.r2_power));
  return v;
}

// ---------------------------------------------------------------- 8
Verdict criterion8() {
  Verdict v;
  std::vector<std::pair<std::string, const Run*>> fwipw;
  for (const Run& r : runs()) {
    if (r.res.variant == "fwipw") fwipw.emplace_back(r.res.name, &r);
  }
  // One more simplex-like polytope that is not a simplex.
  Experiment sq{"fwipw-std-square", std_square(), quadratic(2.0 * Mat::Identity(4, 4), -2.0 * vec({0.3, 0.6, 0.7, 0.4}),
                                                              std_square()),
                RunConfig{}, TheoremId::FWIPW, BoundMode::Face};
  sq.cfg.variant = Variant::FWIPW;
  sq.cfg.step.kind = StepKind::TargetPow2;
  sq.cfg.max_iters = 1000;
  sq.cfg.gap_tol = 1e-14;
  static Run extra{sq, run_experiment(sq), 0.0};
  fwipw.emplace_back(extra.res.name, &extra);

  for (const auto& [name, run] : fwipw) {
    const Polytope& poly = run->ex.poly;
    const RunTrace& tr = run->res.trace;
    if (!run->res.error.empty() || tr.iterates.size() != tr.records.size()) {
      v.check(false, name + ": " + (run->res.error.empty() ? "no iterates" : run->res.error));
      continue;
    }
    std::size_t infeasible = 0, non_integral = 0, not_pow2 = 0, increases = 0;
    double prev = 1.0;
    for (std::size_t t = 0; t < tr.records.size(); ++t) {
      const Vec& x = tr.iterates[t];
      const Vec s = poly.D() * x - poly.e();
      if ((s.size() && s.minCoeff() < -1e-8) || (poly.A() * x - poly.b()).lpNorm<Eigen::Infinity>() > 1e-8) ++infeasible;
      const IterRecord& rec = tr.records[t];
      if (rec.case_id == 0) continue;
      int e = 0;
      if (!(rec.eta > 0) || std::frexp(rec.eta, &e) != 0.5) ++not_pow2;
      if (rec.eta > prev) ++increases;
      prev = rec.eta;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double alpha = x[i] / rec.eta;
        if (std::abs(alpha - std::round(alpha)) > 1e-9 || alpha < -1e-9) {
          ++non_integral;
          break;
        }
      }
    }
    v.check(infeasible + non_integral + not_pow2 + increases == 0 && run->ex.cfg.max_iters == 1000,
            fmt("%-20s %4zu iterates: infeasible %zu, non-integral %zu, eta not 2^-k %zu, eta increases %zu",
                name.c_str(), tr.records.size(), infeasible, non_integral, not_pow2, increases));
  }
  return v;
}

// ---------------------------------------------------------------- 9
Verdict criterion9() {
  Verdict v;
  std::vector<Run> extra;
  auto add = [&](const char* name, Polytope poly, const Vec& target, Variant var, Vec x0) {
    const int n = poly.ambient_dim();
    Experiment ex{name, poly, quadratic(2.0 * Mat::Identity(n, n), -2.0 * target, poly), RunConfig{},
                  var == Variant::IFW ? TheoremId::IFW : TheoremId::AFW_BPFW,
                  var == Variant::IFW ? BoundMode::Face : BoundMode::Vertex};
    ex.cfg.variant = var;
    ex.cfg.max_iters = 2000;
    ex.cfg.gap_tol = 1e-13;
    ex.cfg.x0 = x0;
    extra.push_back({ex, run_experiment(ex), 0.0});
  };
  for (Variant var : {Variant::AFW, Variant::BPFW, Variant::IFW}) {
    add("box3-corner", Polytope::unit_box(3), vec({1.3, 0.4, -0.2}), var, vec({0.0, 1.0, 1.0}));
    add("trunc3-face", named_polytope("trunc3"), vec({0.2, 0.9, -0.3}), var, named_polytope("trunc3").vertices().back());
    add("l1ball3-edge", Polytope::l1_ball(3, 1.0), vec({0.9, 0.8, 0.05}), var, vec({0.0, 0.0, -1.0}));
  }
  std::vector<const Run*> all;
  for (const Run& r : runs()) {
    if (r.res.variant == "afw" || r.res.variant == "bpfw" || r.res.variant == "ifw") all.push_back(&r);
  }
  for (const Run& r : extra) all.push_back(&r);

  std::size_t drops_seen = 0;
  for (const Run* r : all) {
    const auto& recs = r->res.trace.records;
    if (!r->res.error.empty()) {
      v.check(false, r->res.name + "/" + r->res.variant + " error: " + r->res.error);
      continue;
    }
    std::size_t bad = 0, drops = 0;
    if (r->res.variant == "ifw") {
      for (std::size_t t = 0; t + 1 < recs.size(); ++t) {
        if (recs[t].case_id != 3) continue;
        ++drops;
        if (recs[t + 1].support_or_face_dim > recs[t].support_or_face_dim - 1) ++bad;
      }
    } else {
      long productive = 0, dropped = 0;
      for (const IterRecord& rec : recs) {
        if (rec.case_id == 1 || rec.case_id == 2) ++productive;
        if (rec.case_id == 3) ++dropped;
        if (dropped > productive + r->res.trace.initial_support - 1) ++bad;
      }
      drops = static_cast<std::size_t>(dropped);
    }
    drops_seen += drops;
    bool audit_ok = true;
    for (const AuditReport& a : r->res.audits) {
      if (a.name == "drop-steps") audit_ok = a.passed();
    }
    v.check(bad == 0 && audit_ok, fmt("%-16s %-5s %3zu drop steps, %zu violations", r->res.name.c_str(),
                                      r->res.variant.c_str(), drops, bad));
  }
  v.check(drops_seen > 0, fmt("%zu drop steps exercised in total", drops_seen));
  return v;
}

// ---------------------------------------------------------------- 10
Verdict criterion10() {
  Verdict v;
  std::vector<Polytope> polys{named_polytope("simplex4"), named_polytope("box3"),    named_polytope("trunc3"),
                              named_polytope("l1ball3"),  named_polytope("box_2x1"), random_vrep(3, 10, 21),
                              std_square()};
  std::mt19937_64 rng(10);
  std::normal_distribution<double> N(0.0, 1.0);
  std::size_t lmo_bad = 0, step_bad = 0;
  double worst_step = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Polytope& poly = polys[k % polys.size()];
    const int n = poly.ambient_dim();
    const Vec x = sample_point(poly, rng);
    Vec g(n), d(n);
    for (int i = 0; i < n; ++i) {
      g[i] = N(rng);
      d[i] = N(rng);
    }
    // Keep d inside aff(C).
    if (poly.A().rows() > 0) {
      const Mat& A = poly.A();
      d -= A.transpose() * (A * A.transpose()).ldlt().solve(A * d);
    }
    const Vec z = poly.in_face_lmo(x, g);
    const double want = oracle::in_face_min(poly, x, g);
    const auto face = oracle::minimal_face_vertices(poly, x);
    bool on_face = false;
    for (const Vec& u : face) on_face = on_face || (u - z).norm() <= 1e-9;
    if (!on_face || std::abs(g.dot(z) - want) > 1e-9 * std::max(1.0, std::abs(want))) ++lmo_bad;

    const double step = poly.max_step(x, d);
    const double ref = oracle::max_step_bisect(poly, x, d);
    worst_step = std::max(worst_step, std::abs(step - ref));
    if (!(std::abs(step - ref) <= 1e-8)) ++step_bad;
  }
  v.check(lmo_bad == 0, fmt("in_face_lmo vs brute force: %zu/100 mismatches", lmo_bad));
  v.check(step_bad == 0, fmt("max_step vs bisection: %zu/100 mismatches, worst |diff| %.3g", step_bad, worst_step));
  return v;
}

}  // namespace

int main() {
  const std::pair<int, std::function<Verdict()>> criteria[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s (%.2fs)\n", id, v.pass ? "PASS" : "FAIL", seconds_since(t0));
    for (const std::string& n : v.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
