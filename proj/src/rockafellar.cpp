#include "heis/rockafellar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace heis {

namespace {

// Nodes along the horizontal segment [a, b], endpoints included/excluded by
// the caller through the index range.
void append_segment(Chain& c, const Point& a, const Point& b, int N,
                    const SubgradientSelector& sel, bool include_start) {
    for (int i = include_start ? 0 : 1; i <= N; ++i) {
        const Point g = horizontal_point(a, b, static_cast<double>(i) / N);
        c.nodes.push_back({g, sel(g)});
    }
}

}  // namespace

void validate_chain(const Chain& c) {
    if (c.nodes.empty()) throw std::invalid_argument("chain: empty");
    for (size_t i = 0; i + 1 < c.nodes.size(); ++i) {
        const Point& a = c.nodes[i].g;
        const Point& b = c.nodes[i + 1].g;
        // Membership is symmetric; the looser of the two tolerances applies.
        const double tol = std::max(plane_tolerance(a), plane_tolerance(b)) * 8.0;
        if (!in_horizontal_plane(a, b, tol))
            throw std::invalid_argument("chain: node " + std::to_string(i + 1) +
                                        " not in the horizontal plane of node " +
                                        std::to_string(i));
    }
}

double chain_sum(const Chain& c) {
    validate_chain(c);
    double s = 0.0;
    for (size_t i = 0; i + 1 < c.nodes.size(); ++i)
        s += dot(c.nodes[i].p, xi1(c.nodes[i + 1].g) - xi1(c.nodes[i].g));
    return s;
}

double gap_bound(const Chain& c) {
    validate_chain(c);
    double s = 0.0;
    for (size_t i = 0; i + 1 < c.nodes.size(); ++i)
        s += dot(c.nodes[i + 1].p - c.nodes[i].p, xi1(c.nodes[i + 1].g) - xi1(c.nodes[i].g));
    return s;
}

Chain build_chain(const Field& u, const Point& g0, const Point& g, int N,
                  const SubgradientSelector* selector) {
    if (N < 1) throw std::invalid_argument("build_chain: N < 1");
    SubgradientSelector sel =
        selector ? *selector : SubgradientSelector([&u](const Point& p) {
            return horizontal_gradient(u, p);
        });

    Chain c;
    if ((xi1(g) - xi1(g0)).norm() == 0.0 && std::abs(g.t - g0.t) == 0.0) {
        c.nodes.push_back({g0, sel(g0)});
        return c;
    }
    if (in_horizontal_plane(g0, g)) {
        // Single segment.
        append_segment(c, g0, g, N, sel, true);
        return c;
    }
    if ((xi1(g) - xi1(g0)).norm() > 0.0) {
        // Two segments through g'' in H_{g0} intersect H_g.
        const Point gpp = plane_intersection_point(g0, g);
        append_segment(c, g0, gpp, N, sel, true);
        append_segment(c, gpp, g, N, sel, false);
        return c;
    }
    // Equal xi1: auxiliary unit x-offset g' in H_{g0}, then g'' in H_{g'} intersect H_g.
    const Point gp = mul(g0, Point{1.0, 0.0, 0.0});
    const Point gpp = plane_intersection_point(gp, g);
    append_segment(c, g0, gp, N, sel, true);
    append_segment(c, gp, gpp, N, sel, false);
    append_segment(c, gpp, g, N, sel, false);
    return c;
}

ReconstructResult reconstruct(const Field& u, const Point& g0, const Point& g, double eps,
                              const SubgradientSelector* selector) {
    if (eps <= 0.0) throw std::invalid_argument("reconstruct: eps must be positive");
    const double target = u(g) - u(g0);
    ReconstructResult res;
    if (g.x == g0.x && g.y == g0.y && g.t == g0.t) {
        res.n_used = 1;
        return res;
    }
    for (int N = 8; N <= (1 << 20); N *= 2) {
        const Chain c = build_chain(u, g0, g, N, selector);
        res.value = chain_sum(c);
        res.n_used = N;
        res.gap = target - res.value;
        if (res.gap <= eps) return res;
    }
    throw std::runtime_error("reconstruct: no convergence at N=2^20 (field not convex?)");
}

}  // namespace heis
