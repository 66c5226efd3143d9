#pragma once

#include "polyfw/polytope.hpp"

#include <istream>
#include <string>

namespace polyfw {

// Text format (tokens separated by whitespace, '#' starts a comment):
//
//   simplex N
//   box N [lower x1..xN] [upper x1..xN]        default bounds 0 and 1
//   l1ball N R
//   vrep COUNT N   followed by COUNT*N numbers, one vertex per row
//   stdform M N    A <M*N numbers> b <M numbers>
//   hform M K N    A <M*N> b <M> D <K*N> e <K>
//
// Matrices are row-major. See docs/formats.md.
Polytope parse_polytope(std::istream& in);

// Built-in names: simplexN, boxN, box_2x1, trunc3, l1ballN, wolfe1.
bool is_named_polytope(const std::string& name);
Polytope named_polytope(const std::string& name);

// A built-in name or a path to a polytope file.
Polytope load_polytope(const std::string& name_or_path);

// Whitespace/comma/semicolon separated numbers, either inline or from a file.
Mat read_matrix(const std::string& inline_or_path);
Vec read_vector(const std::string& inline_or_path);

}  // namespace polyfw
