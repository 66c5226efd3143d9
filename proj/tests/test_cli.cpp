#include "polyfw/cli.hpp"
#include "polyfw/polytope_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace polyfw;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<const char*> args) {
  args.insert(args.begin(), "polyfw");
  std::ostringstream out, err;
  const int code = parse_and_dispatch(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("geometry subcommand prints frozen distances") {
  const Outcome phi = call({"geometry", "--polytope", "box2", "--op", "phi", "--face", "v0"});
  CHECK(phi.code == 0);
  CHECK(phi.out.find("0.707106781") != std::string::npos);
  const Outcome phibar = call({"geometry", "--polytope", "box2", "--op", "phibar", "--face", "v0"});
  CHECK(phibar.code == 0);
  CHECK(phibar.out.find('1') != std::string::npos);
}

TEST_CASE("solve writes a CSV trace") {
  const Outcome r = call({"solve", "--polytope", "simplex3", "--objective", "quad:target=0.5;0.3;0.2", "--variant",
                          "afw", "--max-iters", "50", "--audit"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,f_val,f_gap", 0) == 0);
}

TEST_CASE("exit codes for bad input") {
  CHECK(call({"solve", "--polytope", "simplex3", "--objective", "quad", "--variant", "sgd"}).code == 2);
  CHECK(call({"solve", "--polytope", "nowhere.poly", "--objective", "quad"}).code == 2);
  CHECK(call({"geometry", "--polytope", "box2", "--op", "radial", "--y", "3,3", "--x", "0.5,0.5"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("objective and face specs") {
  const Polytope poly = Polytope::simplex(3);
  const Objective q = parse_objective("quad:target=1;0;0", poly);
  CHECK(q.value(Vec{{1.0, 0.0, 0.0}}) == doctest::Approx(-1.0));
  const Objective p = parse_objective("powdist:p=4", poly);
  CHECK(p.value(poly.centroid()) == doctest::Approx(0.0));
  const Objective l = parse_objective("linear:c=1;2;3", poly);
  CHECK(l.value(Vec{{0.0, 1.0, 0.0}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(parse_objective("cubic:c=1", poly), InputError);
  CHECK_THROWS_AS(parse_objective("linear:c=1;2", poly), InputError);

  CHECK(parse_face("C", poly).dim == 2);
  CHECK(parse_face("v1", poly).dim == 0);
  CHECK(parse_face("point:0.5;0.5;0", poly).dim == 1);
  CHECK_THROWS_AS(parse_face("v9", poly), InputError);
}
