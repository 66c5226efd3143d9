#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance binary. None of them call the library routine they check.

#include "polyfw/polytope.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

using polyfw::Mat;
using polyfw::Vec;

// Min-norm point of conv(columns of Z) by enumerating every affinely
// independent subset of at most n+1 columns, projecting the origin onto its
// affine hull and keeping the feasible projections.
double min_norm(const Mat& Z);

// Euclidean distance between conv(P) and conv(Q), via the difference set.
double hull_distance(const Mat& P, const Mat& Q);

// Columns of the vertices selected by `mask` from a vertex list.
Mat columns(const std::vector<Vec>& verts, std::uint64_t mask);

// Inner and outer facial distances straight from the definitions, over the
// face lattice given as vertex masks (C itself included).
double inner_facial(const std::vector<Vec>& verts, const std::vector<std::uint64_t>& faces, std::uint64_t F);
double outer_facial(const std::vector<Vec>& verts, const std::vector<std::uint64_t>& faces, std::uint64_t F);

// Vertices of F(x): every row with slack <= tol at x is also tight at v.
std::vector<Vec> minimal_face_vertices(const polyfw::Polytope& poly, const Vec& x, double tol = 1e-9);

// min <g, v> over the vertices of F(x).
double in_face_min(const polyfw::Polytope& poly, const Vec& x, const Vec& g);

// max{eta : x + eta d feasible} by bisection on the raw slacks.
double max_step_bisect(const polyfw::Polytope& poly, const Vec& x, const Vec& d, double tol = 1e-13);

}  // namespace oracle
