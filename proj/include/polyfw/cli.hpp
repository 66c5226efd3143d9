#pragma once

#include "polyfw/objectives.hpp"
#include "polyfw/polytope.hpp"

#include <cstdint>
#include <ostream>
#include <string>

namespace polyfw {

// Objective spec: KIND[:KEY=VALUE[,KEY=VALUE...]]
//   quad:Q=<m>,c=<v>          Q defaults to 2I, c to 0; target=<v> sets c = -Q target
//   powdist:center=<v>,p=<p>  center defaults to the centroid of C, p to 2
//   linear:c=<v>
// <m> and <v> are file paths or inline numbers separated by ';' or spaces.
Objective parse_objective(const std::string& spec, const Polytope& poly);

// Face spec for the geometry subcommand:
//   C           the polytope itself
//   vK          the vertex with index K in vertices()
//   rows:i;j    the face where rows i and j of D are binding
//   point:<v>   the minimal face of a point
Face parse_face(const std::string& spec, const Polytope& poly);

// Exit codes: 0 success, 1 invariant or envelope failure, 2 usage error.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyfw
