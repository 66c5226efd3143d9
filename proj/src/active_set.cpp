#include "polyfw/active_set.hpp"

#include <cmath>
#include <cstdio>

namespace polyfw {

namespace {

std::vector<long long> intern_key(const Vec& v) {
  std::vector<long long> key(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(std::abs(v[i]) < 9e6)) throw InputError("vertex coordinate out of range for interning");
    key[i] = std::llround(v[i] * 1e12);
  }
  return key;
}

}  // namespace

const char* to_string(DirectionKind kind) {
  switch (kind) {
    case DirectionKind::FW:
      return "FW";
    case DirectionKind::Away:
      return "Away";
    case DirectionKind::BPFW:
      return "BPFW";
    case DirectionKind::InAway:
      return "InAway";
    case DirectionKind::InBPFW:
      return "InBPFW";
    case DirectionKind::PW:
      return "PW";
  }
  return "?";
}

ActiveSet ActiveSet::from_vertex(const Polytope& poly, const Vec& v) {
  if (v.size() != poly.ambient_dim()) throw InputError("from_vertex: dimension mismatch");
  if (!poly.is_vertex(v)) throw InputError("from_vertex: " + format_vec(v) + " is not a vertex");
  ActiveSet s;
  const VertexId id = s.intern(v);
  s.weights_[id] = 1.0;
  s.refresh();
  return s;
}

std::vector<VertexId> ActiveSet::support() const {
  std::vector<VertexId> ids;
  for (const auto& kv : weights_) ids.push_back(kv.first);
  return ids;
}

double ActiveSet::weight(VertexId id) const {
  const auto it = weights_.find(id);
  return it == weights_.end() ? 0.0 : it->second;
}

const Vec& ActiveSet::vertex(VertexId id) const {
  if (id < 0 || id >= static_cast<VertexId>(coords_.size())) throw InputError("unknown vertex id");
  return coords_[id];
}

VertexId ActiveSet::intern(const Vec& v) {
  auto key = intern_key(v);
  const auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const VertexId id = static_cast<VertexId>(coords_.size());
  coords_.push_back(v);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<VertexId> ActiveSet::find(const Vec& v) const {
  const auto it = index_.find(intern_key(v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<VertexId, VertexId> ActiveSet::away_and_local_fw(const Vec& g) const {
  if (weights_.empty()) throw Error("away_and_local_fw: empty support");
  VertexId a = -1, z = -1;
  double hi = 0, lo = 0;
  for (const auto& [id, w] : weights_) {
    const double val = g.dot(coords_[id]);
    if (a < 0 || val > hi) {
      a = id;
      hi = val;
    }
    if (z < 0 || val < lo) {
      z = id;
      lo = val;
    }
  }
  return {a, z};
}

double ActiveSet::max_step_for(DirectionKind kind, VertexId a) const {
  switch (kind) {
    case DirectionKind::FW:
      return 1.0;
    case DirectionKind::Away: {
      const double la = weight(a);
      if (la <= 0) throw InputError("max_step_for: away vertex not in support");
      if (la >= 1.0) return kEtaCap;
      return std::min(kEtaCap, la / (1.0 - la));
    }
    case DirectionKind::BPFW: {
      const double la = weight(a);
      if (la <= 0) throw InputError("max_step_for: away vertex not in support");
      return la;
    }
    default:
      throw InputError("max_step_for: direction kind has no active-set step bound");
  }
}

void ActiveSet::apply_step(DirectionKind kind, VertexId first, VertexId second, double eta) {
  const double eta_max = max_step_for(kind, first);
  if (!(eta >= 0.0) || eta > eta_max * (1.0 + 1e-12) + 1e-12) {
    throw InputError("apply_step: step " + std::to_string(eta) + " outside [0, " + std::to_string(eta_max) + "]");
  }
  if (eta == 0.0) return;
  switch (kind) {
    case DirectionKind::FW: {
      vertex(first);
      if (eta >= 1.0) {
        weights_.clear();
        weights_[first] = 1.0;
        break;
      }
      for (auto& kv : weights_) kv.second *= (1.0 - eta);
      weights_[first] += eta;
      break;
    }
    case DirectionKind::Away: {
      for (auto& kv : weights_) kv.second *= (1.0 + eta);
      weights_[first] -= eta;
      break;
    }
    case DirectionKind::BPFW: {
      if (weight(second) <= 0) throw InputError("apply_step: local FW vertex not in support");
      weights_[first] -= eta;
      weights_[second] += eta;
      break;
    }
    default:
      throw InputError("apply_step: unsupported direction kind");
  }
  for (auto it = weights_.begin(); it != weights_.end();) {
    if (it->second < -kDropTol) throw InvariantViolation("apply_step: negative weight " + std::to_string(it->second));
    if (it->second < kDropTol) {
      it = weights_.erase(it);
    } else {
      ++it;
    }
  }
  if (weights_.empty()) throw InvariantViolation("apply_step: support became empty");
  refresh();
}

void ActiveSet::refresh() {
  double total = 0.0;
  for (const auto& kv : weights_) total += kv.second;
  for (auto& kv : weights_) kv.second /= total;
  point_ = Vec::Zero(coords_[weights_.begin()->first].size());
  for (const auto& [id, w] : weights_) point_ += w * coords_[id];
}

std::string ActiveSet::snapshot() const {
  std::string out;
  char buf[64];
  for (const auto& [id, w] : weights_) {
    out += std::to_string(id);
    for (Eigen::Index i = 0; i < coords_[id].size(); ++i) {
      std::snprintf(buf, sizeof buf, " %.17g", coords_[id][i]);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, " %.17g\n", w);
    out += buf;
  }
  return out;
}

}  // namespace polyfw
