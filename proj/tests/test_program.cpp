#include <doctest.h>

#include "rcdual/program.hpp"

using namespace rcdual;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }

// min x^2 s.t. x - 1 > 0 on [-5, 5]
Program affine1d() {
  Program p;
  p.name = "affine1d";
  p.n = 1;
  p.f = ConvexFunction::sq_norm2(1, 1.0);
  p.constraints = {Constraint{ConvexFunction::affine(v1(1), -1.0), true}};
  p.box = Box{v1(-5), v1(5)};
  return p;
}

// min x^2 s.t. x^2 > 0 on [-5, 5]: no point has a negative margin
Program sq1d() {
  Program p;
  p.name = "sq1d";
  p.n = 1;
  p.f = ConvexFunction::sq_norm2(1, 1.0);
  p.constraints = {Constraint{ConvexFunction::sq_norm2(1, 1.0), true}};
  p.box = Box{v1(-5), v1(5)};
  return p;
}

}  // namespace

TEST_CASE("program validation names the broken part") {
  Program p = affine1d();
  CHECK_NOTHROW(p.validate());

  Program bad = p;
  bad.n = 2;
  CHECK_THROWS_WITH_AS(bad.validate(), "program: objective dimension mismatch",
                       std::invalid_argument);

  bad = p;
  bad.constraints.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.constraints[0].h = ConvexFunction::affine(Vec::Zero(2), 0.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.constraints[0].h = ConvexFunction::box_indicator(v1(0), v1(1));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // indicators cannot be constraints

  bad = p;
  bad.box = Box{v1(5), v1(-5)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("feasibility taxonomy") {
  Program p = affine1d();
  CHECK(feasibility(p, v1(1.5)).cls == FeasClass::StrictlyFeasible);
  CHECK(feasibility(p, v1(1.0)).cls == FeasClass::WeaklyFeasible);  // margin exactly 0
  CHECK(feasibility(p, v1(0.0)).cls == FeasClass::Infeasible);
  CHECK(feasibility(p, v1(1.5)).margins[0] == doctest::Approx(0.5));

  // eps pushes the strict threshold up
  CHECK(feasibility(p, v1(1.0 + 1e-10), 1e-9).cls == FeasClass::WeaklyFeasible);
  CHECK(feasibility(p, v1(1.0 + 1e-10), 0.0).cls == FeasClass::StrictlyFeasible);
  CHECK(feasibility(p, v1(1.0 + 1e-8), 1e-9).cls == FeasClass::StrictlyFeasible);

  CHECK(to_string(FeasClass::StrictlyFeasible) == "strictly_feasible");
  CHECK(to_string(FeasClass::WeaklyFeasible) == "weakly_feasible");
  CHECK(to_string(FeasClass::Infeasible) == "infeasible");
}

TEST_CASE("strictness modes override the declared flags") {
  Program p = affine1d();
  CHECK(!passes(p, v1(1.0), 0.0, StrictnessMode::Declared));
  CHECK(!passes(p, v1(1.0), 0.0, StrictnessMode::ForceStrict));
  CHECK(passes(p, v1(1.0), 0.0, StrictnessMode::ForceNonstrict));
  CHECK(passes(p, v1(2.0), 0.0, StrictnessMode::Declared));

  Program q = p;
  q.constraints[0].strict = false;
  CHECK(passes(q, v1(1.0), 0.0, StrictnessMode::Declared));
  CHECK(!passes(q, v1(1.0), 0.0, StrictnessMode::ForceStrict));
}

TEST_CASE("interior reference point search") {
  Program p = affine1d();
  auto pt = slater_point_search(p, 256, 1);
  REQUIRE(pt.has_value());
  CHECK(p.constraints[0].h.eval_real(*pt) < 0.0);

  // x^2 is never negative, so no such point exists
  CHECK(!slater_point_search(sq1d(), 256, 1).has_value());
}
