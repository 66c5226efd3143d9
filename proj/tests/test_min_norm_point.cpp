#include "oracles.hpp"
#include "polyfw/min_norm_point.hpp"

#include <doctest.h>

#include <random>

using namespace polyfw;

TEST_CASE("frozen min-norm points") {
  Mat seg(2, 2);
  seg << 1, -1, 1, 1;  // segment from (1,1) to (-1,1)
  CHECK(min_norm_point(seg).norm == doctest::Approx(1.0));

  Mat tri(3, 3);
  tri << 1, 0, 0, 0, 1, 0, 0, 0, 1;
  const MinNormResult r = min_norm_point(tri);
  CHECK(r.norm == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(r.weights.sum() == doctest::Approx(1.0));
  CHECK(r.weights.minCoeff() >= -1e-14);

  Mat around(2, 3);
  around << 1, -1, 0, -1, -1, 1;  // origin inside
  CHECK(min_norm_point(around).norm <= 1e-12);
}

TEST_CASE("agrees with support enumeration on random clouds") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 3, m = 1 + k % 7;
    Mat P(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) P(i, j) = N(rng) + (k % 2 ? 1.5 : 0.0);
    const MinNormResult r = min_norm_point(P);
    CHECK(r.norm == doctest::Approx(oracle::min_norm(P)).epsilon(1e-8));
    CHECK((P * r.weights - r.point).norm() <= 1e-10);
  }
}

TEST_CASE("hull distance matches the oracle") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Mat G(3, 1 + k % 3), H(3, 1 + k % 4);
    for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = N(rng);
    for (Eigen::Index i = 0; i < H.size(); ++i) H.data()[i] = N(rng) + 2.0;
    CHECK(hull_distance(G, H) == doctest::Approx(oracle::hull_distance(G, H)).epsilon(1e-8));
  }
}
