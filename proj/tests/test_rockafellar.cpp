#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/region.hpp"
#include "heis/rockafellar.hpp"

using namespace heis;

TEST_CASE("chain sum closed form") {
    const Field q = Field::from_source("x^2+y^2");

    Chain trivial;
    trivial.nodes.push_back({identity(), {0, 0}});
    CHECK(chain_sum(trivial) == 0.0);

    for (int N : {10, 100, 1000}) {
        const Chain c = build_chain(q, identity(), {1, 0, 0}, N);
        REQUIRE(c.nodes.size() == static_cast<size_t>(N + 1));
        CHECK(std::abs(chain_sum(c) - double(N - 1) / N) <= 1e-12);
        CHECK(std::abs(gap_bound(c) - 2.0 / N) <= 1e-12);
    }
}

TEST_CASE("chain validation") {
    Chain bad;
    bad.nodes.push_back({identity(), {0, 0}});
    bad.nodes.push_back({Point{0, 0, 1}, {0, 0}});  // not in H_e
    CHECK_THROWS_AS(chain_sum(bad), std::invalid_argument);
    CHECK_THROWS_AS(validate_chain(Chain{}), std::invalid_argument);
}

TEST_CASE("build_chain case analysis") {
    const Field q = Field::from_source("x^2+y^2");

    // g = g0: trivial chain.
    const Chain c0 = build_chain(q, {1, 2, 3}, {1, 2, 3}, 5);
    CHECK(c0.nodes.size() == 1);
    CHECK(chain_sum(c0) == 0.0);

    // Case (a): in-plane target, N segments.
    const Chain ca = build_chain(q, identity(), {1, 0, 0}, 10);
    CHECK(ca.nodes.size() == 11);
    CHECK(std::abs(chain_sum(ca) - 0.9) <= 1e-12);

    // Case (b): xi1 differs, off plane: 2N segments.
    const Chain cb = build_chain(q, identity(), {1, 1, 1}, 10);
    CHECK(cb.nodes.size() == 21);
    validate_chain(cb);

    // Case (c): equal xi1: 3N segments, consecutive plane membership symmetric.
    const Chain cc = build_chain(q, identity(), {0, 0, 1}, 10);
    CHECK(cc.nodes.size() == 31);
    for (size_t i = 0; i + 1 < cc.nodes.size(); ++i) {
        const double tol = 1e-8;
        CHECK(in_horizontal_plane(cc.nodes[i].g, cc.nodes[i + 1].g, tol));
        CHECK(in_horizontal_plane(cc.nodes[i + 1].g, cc.nodes[i].g, tol));
    }
}

TEST_CASE("lower bound invariant on random chains") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        // Random convex quadratic in (x,y) plus linear terms.
        const double a = rng.uniform(0.1, 2.0);
        const double b = rng.uniform(0.1, 2.0);
        const double c = rng.uniform(-1.0, 1.0) * std::sqrt(a * b);  // PSD
        Expr x = variable(Var::X), y = variable(Var::Y), t = variable(Var::T);
        Expr e = add(add(mul(constant(a), mul(x, x)), mul(constant(b), mul(y, y))),
                     add(mul(constant(c), mul(x, y)),
                         add(mul(constant(rng.uniform(-1, 1)), x),
                             mul(constant(rng.uniform(-1, 1)), t))));
        const Field u = Field::exact(e);

        // Random valid chain: horizontal steps with gradient subgradients.
        Chain ch;
        Point g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        ch.nodes.push_back({g, horizontal_gradient(u, g)});
        for (int i = 0; i < 10; ++i) {
            const Point step{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), 0.0};
            g = mul(g, step);
            ch.nodes.push_back({g, horizontal_gradient(u, g)});
        }
        const double diff = u(ch.nodes.back().g) - u(ch.nodes.front().g);
        CHECK(chain_sum(ch) <= diff + 1e-9);
        // Sandwich: 0 <= gap <= gap_bound.
        const double gap = diff - chain_sum(ch);
        CHECK(gap >= -1e-9);
        CHECK(gap <= gap_bound(ch) + 1e-9);
    }
}

TEST_CASE("reconstruct quadratic") {
    const Field q = Field::from_source("x^2+y^2");
    const ReconstructResult r = reconstruct(q, identity(), {1, 0, 0}, 1e-3);
    CHECK(r.value >= 0.999 - 1e-3);
    CHECK(r.value <= 1.0);
    CHECK(r.n_used <= 1024);
    CHECK(r.gap <= 1e-3);

    // Vertical target: u(g) - u(g0) = 0, approached from below.
    const ReconstructResult rv = reconstruct(q, identity(), {0, 0, 1}, 1e-3);
    CHECK(rv.value <= 0.0 + 1e-12);
    CHECK(std::abs(rv.value) <= 1e-3);

    const ReconstructResult r0 = reconstruct(q, {1, 1, 1}, {1, 1, 1}, 1e-3);
    CHECK(r0.value == 0.0);
    CHECK(r0.n_used == 1);

    CHECK_THROWS_AS(reconstruct(q, identity(), {1, 0, 0}, -1.0), std::invalid_argument);
}

TEST_CASE("gap decreases with N") {
    const Field u = Field::from_source("x^2+2*y^2+x/2");
    const Point g0{-0.5, 0.2, 0.1};
    const Point g{0.75, -0.3, 0.6};
    const double diff = u(g) - u(g0);
    double prev_gap = 1e18;
    for (int N : {8, 16, 32, 64, 128, 256}) {
        const Chain c = build_chain(u, g0, g, N);
        const double gap = diff - chain_sum(c);
        CHECK(gap >= -1e-9);
        CHECK(gap <= prev_gap + 1e-12);
        CHECK(gap <= gap_bound(c) + 1e-9);
        prev_gap = gap;
    }
    // O(1/N) convergence: fitted constant stays bounded.
    const double c256 = prev_gap * 256;
    CHECK(c256 <= 100.0);
}

TEST_CASE("custom subgradient selector for abs(x)") {
    const Field a = Field::from_source("abs(x)");
    // Midpoint selector: 0 at the kink, sign elsewhere.
    SubgradientSelector sel = [](const Point& g) {
        return HVector{g.x > 0 ? 1.0 : (g.x < 0 ? -1.0 : 0.0), 0.0};
    };
    const Chain c = build_chain(a, Point{-1, 0, 0}, Point{1, 0, 0}, 64, &sel);
    const double diff = a({1, 0, 0}) - a({-1, 0, 0});
    CHECK(chain_sum(c) <= diff + 1e-9);
}
