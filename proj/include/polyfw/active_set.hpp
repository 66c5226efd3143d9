#pragma once

#include "polyfw/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polyfw {

enum class DirectionKind { FW, Away, BPFW, InAway, InBPFW, PW };

const char* to_string(DirectionKind kind);

using VertexId = int;

// Convex-combination representation x = sum_v lambda_v v of the iterate.
// Vertices are interned by their coordinates rounded to 12 decimals, so equal
// points coming back from different oracle calls share one id.
class ActiveSet {
 public:
  static constexpr double kEtaCap = 1e6;
  static constexpr double kDropTol = 1e-12;

  static ActiveSet from_vertex(const Polytope& poly, const Vec& v);

  const Vec& point() const { return point_; }
  std::size_t size() const { return weights_.size(); }
  std::vector<VertexId> support() const;
  double weight(VertexId id) const;
  const Vec& vertex(VertexId id) const;
  VertexId intern(const Vec& v);
  std::optional<VertexId> find(const Vec& v) const;

  // (away vertex, local FW vertex): argmax / argmin of <g, .> over the support.
  std::pair<VertexId, VertexId> away_and_local_fw(const Vec& g) const;

  // FW -> 1, Away -> lambda_a/(1-lambda_a) (capped at kEtaCap), BPFW -> lambda_a.
  double max_step_for(DirectionKind kind, VertexId a) const;

  // FW: `first` is the FW vertex v. Away: `first` is a. BPFW: `first` is a,
  // `second` is z.
  void apply_step(DirectionKind kind, VertexId first, VertexId second, double eta);

  // One line per support vertex: id, coordinates, weight.
  std::string snapshot() const;

 private:
  ActiveSet() = default;
  void refresh();

  std::vector<Vec> coords_;
  std::map<std::vector<long long>, VertexId> index_;
  std::map<VertexId, double> weights_;
  Vec point_;
};

}  // namespace polyfw
