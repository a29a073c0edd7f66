#include <doctest.h>

#include <rcdual/reduction.hpp>

#include <cmath>

using namespace rcdual;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

ConvexBody unit_square() {
    ConvexBody d;
    d.shape = ConvexBody::Shape::Polytope;
    d.A = Mat(4, 2);
    d.A << 1, 0, -1, 0, 0, 1, 0, -1;
    d.b = Vec::Ones(4);
    return d;
}

ConvexBody ball(Vec center, double radius) {
    ConvexBody d;
    d.shape = ConvexBody::Shape::Ball;
    d.center = std::move(center);
    d.radius = radius;
    return d;
}

} // namespace

TEST_CASE("bodies reject malformed shapes") {
    ConvexBody zero_row = unit_square();
    zero_row.A.row(2).setZero();
    CHECK_THROWS_WITH_AS(zero_row.validate(), doctest::Contains("row 2 is the zero vector"),
                         std::invalid_argument);

    ConvexBody mismatch = unit_square();
    mismatch.b = Vec::Ones(3);
    CHECK_THROWS_WITH_AS(mismatch.validate(), doctest::Contains("offset count"),
                         std::invalid_argument);

    // x <= 1 and -x <= -2 has no interior point
    ConvexBody empty;
    empty.shape = ConvexBody::Shape::Polytope;
    empty.A = Mat(2, 1);
    empty.A << 1, -1;
    empty.b = Vec(2);
    empty.b << 1, -2;
    CHECK_THROWS_WITH_AS(empty.validate(), doctest::Contains("interior"),
                         std::invalid_argument);

    CHECK_THROWS_WITH_AS(ball(v2(0, 0), 0.0).validate(), doctest::Contains("radius"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(ball(Vec(), 1.0).validate(), doctest::Contains("center"),
                         std::invalid_argument);
}

TEST_CASE("interior margins classify points against the body") {
    ConvexBody sq = unit_square();
    CHECK(sq.strictly_inside(v2(0.0, 0.0)));
    CHECK(sq.strictly_inside(v2(0.9, -0.9)));
    CHECK(!sq.strictly_inside(v2(1.0, 0.0)));  // on the boundary
    CHECK(!sq.strictly_inside(v2(1.5, 0.0)));
    CHECK(sq.interior_margins(v2(0.5, 0.0)).minCoeff() == doctest::Approx(0.5));

    ConvexBody b = ball(v2(0.5, 0.0), 2.0);
    CHECK(b.strictly_inside(v2(0.5, 0.0)));
    CHECK(!b.strictly_inside(v2(2.5, 0.0)));
    CHECK(b.interior_margins(v2(1.5, 0.0))[0] == doctest::Approx(1.0));

    REQUIRE(b.interior_point().has_value());
    CHECK(*b.interior_point() == b.center);
    REQUIRE(sq.interior_point().has_value());
    CHECK(sq.strictly_inside(*sq.interior_point()));
}

TEST_CASE("gauge construction recentres the body on the anchor image") {
    ConvexBody sq = unit_square();
    Mat T = Mat::Identity(2, 2);
    GaugeBuild g = build_gauge(sq, T, v2(0.0, 0.0));
    CHECK(g.gauge.shape == GaugeFunction::Shape::Polytope);
    CHECK(g.gauge.offsets == sq.b);
    CHECK(g.gauge.gauge(v2(0.0, 0.0)) == 0.0);
    CHECK(g.gauge.gauge(v2(2.0, 0.0)) == doctest::Approx(2.0));

    ConvexBody b = ball(v2(0.5, 0.0), 2.0);
    GaugeBuild gb = build_gauge(b, T, v2(0.0, 0.0));
    CHECK(gb.gauge.center == v2(0.5, 0.0));
    CHECK(gb.gauge.radius == 2.0);

    // anchor image on/outside the boundary is not reducible
    CHECK_THROWS_WITH_AS(build_gauge(sq, T, v2(1.0, 0.0)),
                         doctest::Contains("reduction not applicable"),
                         std::invalid_argument);

    Mat bad = Mat::Identity(3, 3);
    CHECK_THROWS_AS(build_gauge(sq, bad, Vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("an anchor already outside the interior closes the problem immediately") {
    // unconstrained minimizer of |x - (3,0)|^2 lies outside the unit ball
    ConvexFunction f = ConvexFunction::quadratic(2.0 * Mat::Identity(2, 2), v2(-6.0, 0.0), 9.0);
    Box box{v2(-4.0, -4.0), v2(4.0, 4.0)};
    ReductionOutcome out = reduce(f, Mat::Identity(2, 2), ball(v2(0.0, 0.0), 1.0), box);
    CHECK(out.already_solved);
    // the anchor is derived through a factorization, so exactness stops at ulps
    CHECK((out.x_anchor - v2(3.0, 0.0)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(out.f_at_anchor) <= 1e-12);
    CHECK(!out.program.has_value());
}

TEST_CASE("the reduced program carries one relaxed gauge constraint pinned at -1") {
    ConvexFunction f = ConvexFunction::sq_norm2(2, 1.0);
    Box box{v2(-2.0, -2.0), v2(2.0, 2.0)};
    ReductionOutcome out = reduce(f, Mat::Identity(2, 2), unit_square(), box);
    CHECK(!out.already_solved);
    REQUIRE(out.program.has_value());
    const Program& q = *out.program;
    REQUIRE(q.constraints.size() == 1);
    CHECK(!q.constraints[0].strict);
    CHECK(q.constraints[0].h.kind() == ConvexFunction::Kind::GaugeAffine);
    CHECK(q.constraints[0].h.eval_real(out.x_anchor) == -1.0);  // exact by construction
}

TEST_CASE("anchors may be supplied instead of derived") {
    ConvexFunction f = ConvexFunction::sq_norm2(2, 1.0);
    Box box{v2(-3.0, -3.0), v2(3.0, 3.0)};
    ReductionOutcome out = reduce(f, Mat::Identity(2, 2), ball(v2(0.0, 0.0), 1.0), box,
                                  v2(0.5, 0.0));
    CHECK(!out.already_solved);
    CHECK(out.x_anchor == v2(0.5, 0.0));
    CHECK(out.f_at_anchor == doctest::Approx(0.25));
    REQUIRE(out.program.has_value());
    CHECK(out.program->constraints[0].h.eval_real(v2(0.5, 0.0)) == -1.0);
}

TEST_CASE("exclusion of the unit square: direct and gauge sweeps agree") {
    ConvexFunction f = ConvexFunction::sq_norm2(2, 1.0);
    Box box{v2(-2.0, -2.0), v2(2.0, 2.0)};
    RunConfig cfg;
    cfg.grid_n = 201;
    ReductionReport rep = verify_reduction(f, Mat::Identity(2, 2), unit_square(), box, cfg);
    CHECK(rep.h_at_anchor == -1.0);
    REQUIRE(rep.direct.value.is_finite());
    CHECK(std::abs(rep.direct.value.value() - 1.0) <= 1e-6);
    for (const ChainFlag& c : rep.checks) {
        INFO(c.name, ": ", c.note);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());
}

TEST_CASE("exclusion of the unit ball: direct and gauge sweeps agree") {
    ConvexFunction f = ConvexFunction::sq_norm2(2, 1.0);
    Box box{v2(-3.0, -3.0), v2(3.0, 3.0)};
    RunConfig cfg;
    cfg.grid_n = 201;
    ReductionReport rep = verify_reduction(f, Mat::Identity(2, 2), ball(v2(0.0, 0.0), 1.0),
                                           box, cfg);
    CHECK(rep.h_at_anchor == -1.0);
    REQUIRE(rep.direct.value.is_finite());
    CHECK(std::abs(rep.direct.value.value() - 1.0) <= 1e-4);
    CHECK(rep.all_pass());
}

TEST_CASE("exclusion of an off-centre ball: gauge normalization is exact on the boundary") {
    ConvexFunction f = ConvexFunction::sq_norm2(2, 1.0);
    Box box{v2(-4.0, -4.0), v2(4.0, 4.0)};
    RunConfig cfg;
    cfg.grid_n = 401;  // puts the boundary minimizer (-1.5, 0) on the lattice
    ReductionReport rep = verify_reduction(f, Mat::Identity(2, 2), ball(v2(0.5, 0.0), 2.0),
                                           box, cfg);
    CHECK(rep.h_at_anchor == -1.0);
    REQUIRE(rep.direct.value.is_finite());
    // true value 2.25 at (-1.5, 0)
    CHECK(std::abs(rep.direct.value.value() - 2.25) <= 1e-4);
    CHECK(rep.all_pass());
}

TEST_CASE("a boundary anchor turns verification into a single check") {
    ConvexFunction f = ConvexFunction::quadratic(2.0 * Mat::Identity(2, 2), v2(-6.0, 0.0), 9.0);
    Box box{v2(-4.0, -4.0), v2(4.0, 4.0)};
    RunConfig cfg;
    cfg.grid_n = 201;
    ReductionReport rep = verify_reduction(f, Mat::Identity(2, 2), ball(v2(0.0, 0.0), 1.0),
                                           box, cfg);
    CHECK(rep.outcome.already_solved);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].name == "anchor_outside_interior");
    CHECK(rep.checks[0].pass);
    CHECK(rep.all_pass());
}

TEST_CASE("bodies compare by value") {
    CHECK(unit_square() == unit_square());
    CHECK(!(unit_square() == ball(v2(0, 0), 1.0)));
    ConvexBody other = unit_square();
    other.b[0] = 2.0;
    CHECK(!(unit_square() == other));
}
