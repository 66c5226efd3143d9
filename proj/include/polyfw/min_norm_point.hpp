#pragma once

#include "polyfw/core.hpp"

namespace polyfw {

struct MinNormResult {
  Vec point;    // the minimum-norm point of conv(columns)
  Vec weights;  // barycentric weights over the columns
  double norm = 0.0;
};

// Wolfe's minimum-norm-point algorithm over conv of the columns of P.
MinNormResult min_norm_point(const Mat& P, double tol = 1e-14);

// Euclidean distance between conv(columns of G) and conv(columns of H).
double hull_distance(const Mat& G, const Mat& H);

}  // namespace polyfw
