#pragma once

#include "polyfw/active_set.hpp"
#include "polyfw/polytope.hpp"

#include <vector>

namespace polyfw {

struct Direction {
  DirectionKind kind = DirectionKind::FW;
  Vec vec;
  double eta_max = 1.0;
  double inner = 0.0;  // <g, vec>
  // Vertices defining the direction: FW -> target = v; Away/InAway -> source = a;
  // BPFW/InBPFW -> source = a, target = z; PW -> source = a, target = v.
  Vec source;
  Vec target;
};

// Candidate directions plus the vertices needed by the audits.
struct CandidateSet {
  std::vector<Direction> dirs;
  Vec v;  // global FW vertex
  Vec a;  // away vertex (support or minimal face)
  Vec z;  // local FW vertex (support or minimal face)
};

CandidateSet candidates_afw(const Polytope& poly, const ActiveSet& aset, const Vec& g);
CandidateSet candidates_bpfw(const Polytope& poly, const ActiveSet& aset, const Vec& g);
CandidateSet candidates_ifw(const Polytope& poly, const Vec& x, const Vec& g);

// Argmin of inner; exact ties keep the earlier candidate (FW comes first).
const Direction& select(const std::vector<Direction>& cands);

// d = v - a with a the in-face maximizer. eta_max is left at +inf.
Direction pairwise_direction(const Polytope& poly, const Vec& x, const Vec& g);
Direction pairwise_direction(const Polytope& poly, const Vec& x, const Vec& g, double bind_tol);

double fw_gap(const Vec& g, const Vec& x, const Vec& v);

}  // namespace polyfw
