#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heis/calculus.hpp"
#include "heis/region.hpp"

using namespace heis;

TEST_CASE("horizontal vector fields") {
    Field t = Field::from_source("t");
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const Point g{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(apply_X(t, g) == doctest::Approx(2 * g.y));
        CHECK(apply_Y(t, g) == doctest::Approx(-2 * g.x));
        CHECK(apply_T(t, g) == doctest::Approx(1.0));
    }

    Field x = Field::from_source("x");
    CHECK(apply_X(x, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(apply_Y(x, {1, 2, 3}) == doctest::Approx(0.0));
    CHECK(apply_T(x, {1, 2, 3}) == doctest::Approx(0.0));

    Field xt = Field::from_source("x*t");
    CHECK(apply_X(xt, {1, 1, 0}) == doctest::Approx(2.0));  // t + 2xy
}

TEST_CASE("horizontal gradient") {
    Field u = Field::from_source("x^2+y^2");
    const HVector g = horizontal_gradient(u, {1, 2, 5});
    CHECK(g.a == doctest::Approx(2.0));
    CHECK(g.b == doctest::Approx(4.0));

    Field c = Field::from_source("3");
    const HVector gc = horizontal_gradient(c, {1, 2, 3});
    CHECK(gc.norm() == 0.0);
}

TEST_CASE("horizontal hessian and commutator") {
    Field t = Field::from_source("t");
    Hessian2 h = horizontal_hessian(t, {0.3, -0.7, 0.1});
    CHECK(h.xx == doctest::Approx(0.0));
    CHECK(h.xy == doctest::Approx(-2.0));
    CHECK(h.yx == doctest::Approx(2.0));
    CHECK(h.yy == doctest::Approx(0.0));
    const Sym2 s = h.sym();
    CHECK(s.xx == doctest::Approx(0.0));
    CHECK(s.xy == doctest::Approx(0.0));

    Field q = Field::from_source("x^2+y^2");
    Hessian2 hq = horizontal_hessian(q, {1, 2, 3});
    CHECK(hq.xx == doctest::Approx(2.0));
    CHECK(hq.xy == doctest::Approx(0.0));
    CHECK(hq.yy == doctest::Approx(2.0));

    Field xt = Field::from_source("x*t");
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Point g{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Hessian2 hx = horizontal_hessian(xt, g);
        CHECK(hx.xy - hx.yx == doctest::Approx(-4 * g.x));
        CHECK(hx.xy - hx.yx == doctest::Approx(-4 * apply_T(xt, g)));
    }
}

TEST_CASE("commutator identity exact and FD") {
    const char* sources[] = {"x^2*y+t*x", "x*y*t", "t^2-x^3", "y^2*t+x*y"};
    Rng rng(8);
    for (const char* src : sources) {
        Field exact = Field::from_source(src, true);
        Field fd = Field::from_source(src, false);
        for (int i = 0; i < 50; ++i) {
            const Point g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const Hessian2 he = horizontal_hessian(exact, g);
            CHECK(std::abs(he.xy - he.yx + 4 * apply_T(exact, g)) <= 1e-10);
            CHECK(std::abs(commutator_residual(exact, g)) <= 1e-10);
            const Hessian2 hf = horizontal_hessian(fd, g);
            CHECK(std::abs(hf.xy - hf.yx + 4 * apply_T(fd, g)) <= 1e-4);
            CHECK(std::abs(commutator_residual(fd, g)) <= 1e-4);
        }
    }
}

TEST_CASE("C0 rejected for exact hessian path") {
    Field a = Field::from_source("abs(x)");
    CHECK(a.smoothness() == Smoothness::C0);
    // Consumers reject C0; hessian evaluation itself is still defined a.e.
}

TEST_CASE("pansu differential") {
    Field u = Field::from_source("x^2+y^2+t/2");
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Point g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Point h{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const LimitResult r = pansu_differential(u, g, h);
        const double expected = dot(horizontal_gradient(u, g), xi1(h));
        CHECK(r.value == doctest::Approx(expected).epsilon(1e-6));
    }

    // Vertical direction: quotient is lambda * t_h -> 0.
    Field t = Field::from_source("t");
    const LimitResult rv = pansu_differential(t, identity(), {0, 0, 1});
    CHECK(std::abs(rv.value) <= 1e-5);

    Field c = Field::from_source("7");
    CHECK(pansu_differential(c, {1, 1, 1}, {1, 2, 0}).value == doctest::Approx(0.0));
}

TEST_CASE("directional derivative") {
    Field a = Field::from_source("abs(x)");
    CHECK(directional_derivative(a, identity(), {1, 0}).value == doctest::Approx(1.0));
    CHECK(directional_derivative(a, identity(), {-1, 0}).value == doctest::Approx(1.0));

    Field u = Field::from_source("x^2+y^2");
    const LimitResult r = directional_derivative(u, {1, 2, 0}, {0.6, 0.8}, true);
    CHECK(r.value == doctest::Approx(0.6 * 2 + 0.8 * 4).epsilon(1e-8));
    CHECK(r.monotone);

    Field rho = Field::from_source("((x^2+y^2)^2+t^2)^(1/4)");
    const LimitResult rr = directional_derivative(rho, identity(), {0.6, 0.8}, true);
    CHECK(rr.value == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(directional_derivative(u, identity(), {0, 0}), std::invalid_argument);
}

TEST_CASE("convex quotient monotone in lambda") {
    Field u = Field::from_source("x^2+y^2+abs(x)");
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        const Point g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double th = rng.uniform(0, 6.28318);
        const LimitResult r =
            directional_derivative(u, g, {std::cos(th), std::sin(th)}, true);
        CHECK(r.monotone);
    }
}

TEST_CASE("radial gradient norm matches closed form") {
    RadialField z("t^2");
    const Field& v = z.field3d();
    RadialProfile p = z.profile();
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const double r = rng.uniform(0.1, 2.0);
        const double t = rng.uniform(-2.0, 2.0);
        const double th = rng.uniform(0, 6.28318);
        const Point g{r * std::cos(th), r * std::sin(th), t};
        const double lhs = horizontal_gradient(v, g).norm();
        const double ur = p.dr(r, t), ut = p.dt(r, t);
        const double rhs = std::sqrt(ur * ur + 4 * r * r * ut * ut);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}
