#include "polyfw/lp.hpp"

#include <doctest.h>

using namespace polyfw;

TEST_CASE("textbook LP: max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18") {
  LinearProgram lp(2);
  lp.c = Vec{{-3.0, -5.0}};
  lp.add_le(Vec{{1.0, 0.0}}, 4);
  lp.add_le(Vec{{0.0, 2.0}}, 12);
  lp.add_le(Vec{{3.0, 2.0}}, 18);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(-36.0));
  CHECK(r.z[0] == doctest::Approx(2.0));
  CHECK(r.z[1] == doctest::Approx(6.0));
}

TEST_CASE("equality and >= rows need phase one") {
  // min x + 2y + 3z, x + y + z = 1, y + z >= 0.5
  LinearProgram lp(3);
  lp.c = Vec{{1.0, 2.0, 3.0}};
  lp.add_eq(Vec{{1.0, 1.0, 1.0}}, 1);
  lp.add_ge(Vec{{0.0, 1.0, 1.0}}, 0.5);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.5));
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram bad(1);
  bad.c = Vec{{1.0}};
  bad.add_le(Vec{{1.0}}, 1);
  bad.add_ge(Vec{{1.0}}, 2);
  CHECK(solve_lp(bad).status == LpStatus::Infeasible);

  LinearProgram open(2);
  open.c = Vec{{-1.0, 0.0}};
  open.add_le(Vec{{0.0, 1.0}}, 1);
  CHECK(solve_lp(open).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate vertex does not cycle") {
  // Beale's cycling example.
  LinearProgram lp(4);
  lp.c = Vec{{-0.75, 150.0, -0.02, 6.0}};
  lp.add_le(Vec{{0.25, -60.0, -0.04, 9.0}}, 0);
  lp.add_le(Vec{{0.5, -90.0, -0.02, 3.0}}, 0);
  lp.add_le(Vec{{0.0, 0.0, 1.0, 0.0}}, 1);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(-0.05));
}
