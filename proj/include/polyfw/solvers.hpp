#pragma once

#include "polyfw/directions.hpp"
#include "polyfw/objectives.hpp"
#include "polyfw/stepsize.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace polyfw {

enum class Variant { FW, AFW, BPFW, IFW, FWIPW };

const char* to_string(Variant v);
Variant parse_variant(const std::string& name);

struct RunConfig {
  Variant variant = Variant::FW;
  StepRule step;
  std::size_t max_iters = 1000;
  double gap_tol = 1e-8;
  std::size_t record_every = 1;
  std::optional<Vec> x0;        // defaults to lmo(0), a vertex
  bool store_iterates = false;  // keep x^(t) for every recorded t
};

struct IterRecord {
  std::size_t t = 0;
  double f_val = 0.0;
  double f_gap = 0.0;  // NaN when f* is unknown
  double fw_gap = 0.0;
  std::string step_kind = "none";
  int case_id = 0;  // 1, 2, 3 for steps; 0 on the terminal record
  double eta = 0.0;
  int support_or_face_dim = 0;

  // Extra fields for the inequality audits (not part of the CSV).
  double inner = 0.0;     // <g, d> of the chosen direction
  double eta_max = 0.0;
  double pair_gap = 0.0;  // <g, a - v>, a = away vertex over S or F(x); NaN for FW
  double gamma = 0.0;     // FWIPW target -<g, d_PW>/L
};

enum class TerminalReason { Converged, MaxIters, Stationary };

const char* to_string(TerminalReason r);

struct RunTrace {
  Variant variant = Variant::FW;
  StepRule step;
  std::vector<IterRecord> records;
  std::vector<Vec> iterates;  // parallel to records when store_iterates
  TerminalReason reason = TerminalReason::MaxIters;
  Vec x_final;
  std::optional<double> f_star;
  int initial_support = 1;
};

RunTrace run_fw(const Polytope& poly, const Objective& f, const RunConfig& cfg);
RunTrace run_afw_bpfw(const Polytope& poly, const Objective& f, const RunConfig& cfg);
RunTrace run_ifw(const Polytope& poly, const Objective& f, const RunConfig& cfg);
RunTrace run_fwipw(const Polytope& poly, const Objective& f, const RunConfig& cfg);
// Dispatch on cfg.variant.
RunTrace run(const Polytope& poly, const Objective& f, const RunConfig& cfg);

// Columns: t,f_val,f_gap,fw_gap,case,eta,step_kind,support_or_face_dim
void write_trace_csv(const RunTrace& trace, std::ostream& out);

}  // namespace polyfw
