#include "polyfw/min_norm_point.hpp"

#include <algorithm>
#include <cmath>

namespace polyfw {

namespace {

// Barycentric weights of the affine min-norm point over aff(columns of S).
Vec affine_min_norm(const Mat& S) {
  const Eigen::Index k = S.cols();
  Mat M = S.transpose() * S;
  M.array() += 1.0;
  const Vec ones = Vec::Ones(k);
  Vec y = M.colPivHouseholderQr().solve(ones);
  return y / y.sum();
}

}  // namespace

MinNormResult min_norm_point(const Mat& P, double tol) {
  const Eigen::Index N = P.cols();
  if (N == 0) throw InputError("min_norm_point: empty point set");
  double scale = 0.0;
  Eigen::Index first = 0;
  for (Eigen::Index j = 0; j < N; ++j) {
    const double s = P.col(j).squaredNorm();
    scale = std::max(scale, s);
    if (s < P.col(first).squaredNorm()) first = j;
  }
  scale = std::max(scale, 1.0);

  std::vector<Eigen::Index> corral{first};
  Vec lambda = Vec::Ones(1);
  Vec x = P.col(first);

  for (int major = 0; major < 10000; ++major) {
    const Vec scores = P.transpose() * x;
    Eigen::Index j;
    scores.minCoeff(&j);
    if (x.squaredNorm() - scores[j] <= tol * scale) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    for (int minor = 0; minor < 1000; ++minor) {
      Mat S(P.rows(), static_cast<Eigen::Index>(corral.size()));
      for (std::size_t i = 0; i < corral.size(); ++i) S.col(i) = P.col(corral[i]);
      const Vec alpha = affine_min_norm(S);
      if (alpha.minCoeff() > 1e-12) {
        lambda = alpha;
        x = S * lambda;
        break;
      }
      // Move from lambda toward alpha until a weight hits zero, then drop it.
      double step = 1.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= 1e-12) {
          const double denom = lambda[i] - alpha[i];
          if (denom > 0) step = std::min(step, lambda[i] / denom);
        }
      }
      lambda = step * alpha + (1.0 - step) * lambda;
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_w;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > 1e-12) {
          kept.push_back(corral[i]);
          kept_w.push_back(lambda[i]);
        }
      }
      corral = kept;
      lambda = Eigen::Map<Vec>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
      lambda /= lambda.sum();
      x.setZero();
      for (std::size_t i = 0; i < corral.size(); ++i) x += lambda[i] * P.col(corral[i]);
    }
  }

  MinNormResult out;
  out.point = x;
  out.weights = Vec::Zero(N);
  for (std::size_t i = 0; i < corral.size(); ++i) out.weights[corral[i]] = lambda[i];
  out.norm = x.norm();
  return out;
}

double hull_distance(const Mat& G, const Mat& H) {
  if (G.rows() != H.rows()) throw InputError("hull_distance: dimension mismatch");
  Mat diff(G.rows(), G.cols() * H.cols());
  for (Eigen::Index i = 0; i < G.cols(); ++i) {
    for (Eigen::Index j = 0; j < H.cols(); ++j) diff.col(i * H.cols() + j) = G.col(i) - H.col(j);
  }
  return min_norm_point(diff).norm;
}

}  // namespace polyfw
