#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heis/field.hpp"
#include "heis/region.hpp"

using namespace heis;

TEST_CASE("parse basics") {
    Expr e = parse("x^2+y^2");
    CHECK(eval(e, {2, 3, 0}) == doctest::Approx(13.0));

    Expr rho = parse("((x^2+y^2)^2+t^2)^(1/4)");
    CHECK(eval(rho, {0, 0, 1}) == doctest::Approx(1.0));
    CHECK(eval(rho, {1, 0, 0}) == doctest::Approx(1.0));

    CHECK(eval(parse("2*3^2"), {0, 0, 0}) == doctest::Approx(18.0));
    CHECK(eval(parse("-x^2"), {2, 0, 0}) == doctest::Approx(-4.0));  // unary minus below ^
    CHECK(eval(parse("2^3^2"), {0, 0, 0}) == doctest::Approx(512.0));  // right assoc
    CHECK(eval(parse("pow(2, 5)"), {0, 0, 0}) == doctest::Approx(32.0));
    CHECK(eval(parse("sin(0)+cos(0)"), {0, 0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("parse errors carry offsets") {
    try {
        parse("x+*y");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(parse("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse("sin(x, y)"), ParseError);
    CHECK_THROWS_AS(parse("pow(x)"), ParseError);
    CHECK_THROWS_AS(parse("(x+y"), ParseError);
}

TEST_CASE("symbolic differentiation") {
    CHECK(eval(diff(parse("t"), Var::X), {1, 2, 3}) == 0.0);
    CHECK(eval(diff(parse("x*t"), Var::T), {5, 0, 0}) == doctest::Approx(5.0));

    // d/dx (x^2+y^2)^2 = 4x(x^2+y^2)
    Expr d = diff(parse("(x^2+y^2)^2"), Var::X);
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const Point g{rng.uniform(-2, 2), rng.uniform(-2, 2), 0};
        CHECK(eval(d, g) == doctest::Approx(4 * g.x * (g.x * g.x + g.y * g.y)));
    }
}

TEST_CASE("print-parse round trip") {
    const char* sources[] = {
        "x^2+y^2", "((x^2+y^2)^2+t^2)^(1/4)", "sin(x*t)-cos(y)/(1+t^2)",
        "-x^2+exp(y)*ln(1+x^2)", "abs(x)+sqrt(1+y^2)",
    };
    Rng rng(2);
    for (const char* src : sources) {
        Expr e = parse(src);
        Expr e2 = parse(to_string(e));
        CHECK(to_string(e) == to_string(e2));  // idempotent after one round
        for (int i = 0; i < 20; ++i) {
            const Point g{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            CHECK(eval(e, g) == doctest::Approx(eval(e2, g)).epsilon(1e-12));
        }
    }
}

TEST_CASE("field partials") {
    Field u = Field::from_source("x^2+y^2");
    CHECK(u.d2(Var::X, Var::X, {0.3, -1, 2}) == doctest::Approx(2.0));
    CHECK(u.smoothness() == Smoothness::C2);

    Field a = Field::from_source("abs(x)");
    CHECK(a.smoothness() == Smoothness::C0);
    CHECK(a.d1(Var::X, {2, 0, 0}) == doctest::Approx(1.0));
    CHECK(a.d1(Var::X, {-2, 0, 0}) == doctest::Approx(-1.0));

    Field rho = Field::from_source("((x^2+y^2)^2+t^2)^(1/4)");
    CHECK(rho({0, 0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("symbolic vs finite differences") {
    const char* sources[] = {
        "x^2*y - t^3 + x*y*t", "sin(x)*cos(y)+exp(t/4)", "(1+x^2+y^2+t^2)^(1/4)",
        "ln(2+x)+sqrt(4+t^2)",
    };
    Rng rng(9);
    for (const char* src : sources) {
        Field exact = Field::from_source(src, true);
        Field fd = Field::from_source(src, false);
        for (int i = 0; i < 100; ++i) {
            const Point g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            for (Var v : {Var::X, Var::Y, Var::T}) {
                const double a = exact.d1(v, g), b = fd.d1(v, g);
                CHECK(std::abs(a - b) <= 1e-6 * (1.0 + std::abs(a)));
            }
        }
    }
}

TEST_CASE("mixed partials symmetric") {
    Field u = Field::from_source("sin(x*y)*exp(t)+x^3*t^2");
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const Point g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CHECK(u.d2(Var::X, Var::Y, g) ==
              doctest::Approx(u.d2(Var::Y, Var::X, g)).epsilon(1e-10));
        CHECK(u.d2(Var::X, Var::T, g) ==
              doctest::Approx(u.d2(Var::T, Var::X, g)).epsilon(1e-10));
    }
}

TEST_CASE("radial field") {
    RadialField z("t^2");
    // z = t^2 gives the gauge.
    const Field& v = z.field3d();
    CHECK(v({1, 0, 0.5}) == doctest::Approx(gauge({1, 0, 0.5})));

    RadialField z1("t^2+1");
    CHECK(z1.field3d()({0, 0, 0}) == doctest::Approx(1.0));
    CHECK(z1.profile().value(0.0, 0.0) == doctest::Approx(1.0));

    RadialField bad("-1");
    CHECK_THROWS_AS(bad.field3d()({0.5, 0.5, 0.5}), std::domain_error);

    CHECK_THROWS_AS(RadialField("x+t"), std::invalid_argument);
}

TEST_CASE("radial profile accepts r alias and scaling") {
    RadialProfile p = RadialProfile::from_source("r^4+t^2-1");
    CHECK(p.value(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(p.dr(1.0, 0.0) == doctest::Approx(4.0));
    RadialProfile h = p.scaled(0.5);
    CHECK(h.dr(1.0, 0.0) == doctest::Approx(2.0));
}
