#include "polyfw/polytope_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace polyfw;

namespace {

Polytope parse(const std::string& text) {
  std::istringstream in(text);
  return parse_polytope(in);
}

}  // namespace

TEST_CASE("every polytope kind parses") {
  CHECK(parse("simplex 4").vertices().size() == 4);
  CHECK(parse("box 2 lower -1 -1 upper 1 2").diameter() == doctest::Approx(std::sqrt(13.0)));
  CHECK(parse("l1ball 3 2.0").l1_radius() == 2.0);
  CHECK(parse("# triangle\nvrep 3 2\n0 0\n1 0\n0 1\n").vertices().size() == 3);
  CHECK(parse("stdform 1 3 A 1 1 1 b 1").is_simplex_like());
  const Polytope h = parse("hform 1 2 2 A 1 1 b 1 D 1 0 0 1 e 0 0");
  CHECK(h.vertices().size() == 2);
}

TEST_CASE("malformed files are InputError") {
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("cube 3"), InputError);
  CHECK_THROWS_AS(parse("simplex x"), InputError);
  CHECK_THROWS_AS(parse("simplex 3 extra"), InputError);
  CHECK_THROWS_AS(parse("vrep 3 2 0 0 1 0"), InputError);
  CHECK_THROWS_AS(parse("l1ball 2 nan"), InputError);
}

TEST_CASE("named polytopes and inline vectors") {
  CHECK(is_named_polytope("simplex12"));
  CHECK(is_named_polytope("box_2x1"));
  CHECK_FALSE(is_named_polytope("cube"));
  CHECK_THROWS_AS(load_polytope("no/such/file.poly"), InputError);
  CHECK(read_vector("1,2;3").isApprox(Vec{{1.0, 2.0, 3.0}}));
  CHECK_THROWS_AS(read_vector("1,x"), InputError);
}
