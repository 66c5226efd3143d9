#include "polyfw/directions.hpp"

#include <cmath>
#include <limits>

namespace polyfw {

namespace {

Direction make(DirectionKind kind, Vec vec, double eta_max, const Vec& g) {
  Direction d;
  d.kind = kind;
  d.inner = g.dot(vec);
  d.vec = std::move(vec);
  d.eta_max = eta_max;
  return d;
}

Direction fw_direction(const Vec& x, const Vec& v, const Vec& g) {
  Direction d = make(DirectionKind::FW, v - x, 1.0, g);
  d.target = v;
  return d;
}

CandidateSet active_candidates(const Polytope& poly, const ActiveSet& aset, const Vec& g, DirectionKind second) {
  const Vec& x = aset.point();
  if (g.size() != x.size()) throw InputError("gradient dimension mismatch");
  CandidateSet out;
  out.v = poly.lmo(g);
  const auto [a_id, z_id] = aset.away_and_local_fw(g);
  out.a = aset.vertex(a_id);
  out.z = aset.vertex(z_id);
  out.dirs.push_back(fw_direction(x, out.v, g));
  Direction d = second == DirectionKind::Away ? make(second, x - out.a, aset.max_step_for(second, a_id), g)
                                              : make(second, out.z - out.a, aset.max_step_for(second, a_id), g);
  d.source = out.a;
  if (second == DirectionKind::BPFW) d.target = out.z;
  out.dirs.push_back(std::move(d));
  return out;
}

// max_step with the +inf sentinel (zero direction) replaced by 1.
double bounded_step(const Polytope& poly, const Vec& x, const Vec& d) {
  const double eta = poly.max_step(x, d);
  return std::isinf(eta) ? 1.0 : eta;
}

}  // namespace

CandidateSet candidates_afw(const Polytope& poly, const ActiveSet& aset, const Vec& g) {
  return active_candidates(poly, aset, g, DirectionKind::Away);
}

CandidateSet candidates_bpfw(const Polytope& poly, const ActiveSet& aset, const Vec& g) {
  return active_candidates(poly, aset, g, DirectionKind::BPFW);
}

CandidateSet candidates_ifw(const Polytope& poly, const Vec& x, const Vec& g) {
  CandidateSet out;
  out.v = poly.lmo(g);
  out.a = poly.in_face_lmo(x, -g);
  out.z = poly.in_face_lmo(x, g);
  out.dirs.push_back(fw_direction(x, out.v, g));
  // Beyond a vertex the ray leaves C, so the exact bound for d_FW is 1.
  out.dirs.back().eta_max = 1.0;

  Direction away = make(DirectionKind::InAway, x - out.a, 0.0, g);
  away.eta_max = bounded_step(poly, x, away.vec);
  away.source = out.a;
  out.dirs.push_back(std::move(away));

  Direction pair = make(DirectionKind::InBPFW, out.z - out.a, 0.0, g);
  pair.eta_max = bounded_step(poly, x, pair.vec);
  pair.source = out.a;
  pair.target = out.z;
  out.dirs.push_back(std::move(pair));
  return out;
}

const Direction& select(const std::vector<Direction>& cands) {
  if (cands.empty()) throw InputError("select: empty candidate set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (cands[i].inner < cands[best].inner) best = i;
  }
  return cands[best];
}

Direction pairwise_direction(const Polytope& poly, const Vec& x, const Vec& g) {
  return pairwise_direction(poly, x, g, poly.limits().bind_tol);
}

Direction pairwise_direction(const Polytope& poly, const Vec& x, const Vec& g, double bind_tol) {
  const Vec v = poly.lmo(g);
  const Vec a = poly.in_face_lmo(x, -g, bind_tol);
  Direction d = make(DirectionKind::PW, v - a, std::numeric_limits<double>::infinity(), g);
  d.source = a;
  d.target = v;
  return d;
}

double fw_gap(const Vec& g, const Vec& x, const Vec& v) { return g.dot(x - v); }

}  // namespace polyfw
