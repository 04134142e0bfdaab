#include "heis/convexity.hpp"

#include <cmath>
#include <limits>

namespace heis {

ConvexityVerdict check_convex_hessian(const Field& u, const Region& R) {
    if (u.smoothness() == Smoothness::C0)
        throw std::invalid_argument("check_convex_hessian: field is not C2");
    ConvexityVerdict v;
    v.worst_margin = std::numeric_limits<double>::infinity();
    const auto xs = linspace(R.box.x0, R.box.x1, R.nx);
    const auto ys = linspace(R.box.y0, R.box.y1, R.ny);
    const auto ts = linspace(R.box.t0, R.box.t1, R.nt);
    for (double x : xs) {
        for (double y : ys) {
            for (double t : ts) {
                const Point g{x, y, t};
                const Sym2 s = symmetrized_hessian(u, g);
                if (!std::isfinite(s.xx) || !std::isfinite(s.xy) || !std::isfinite(s.yy)) {
                    ++v.skipped;
                    continue;
                }
                const double lmin = s.eigenvalues().first;
                const double tol = 1e-9 * (1.0 + s.norm());
                const double margin = lmin + tol;
                if (margin < v.worst_margin) {
                    v.worst_margin = margin;
                    if (lmin < -tol) v.hessian_witness = g;
                }
            }
        }
    }
    if (v.hessian_witness) v.status = Status::Fail;
    return v;
}

ConvexityVerdict check_convex_segments(const Field& u, const Region& R, int n_samples,
                                       uint64_t seed) {
    ConvexityVerdict v;
    v.worst_margin = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    const Box& b = R.box;
    const double lambdas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (int i = 0; i < n_samples; ++i) {
        ++v.samples_attempted;
        const Point g{rng.uniform(b.x0, b.x1), rng.uniform(b.y0, b.y1),
                      rng.uniform(b.t0, b.t1)};
        // The horizontal plane of g is a graph over (x,y).
        const double x2 = rng.uniform(b.x0, b.x1);
        const double y2 = rng.uniform(b.y0, b.y1);
        const Point g2{x2, y2, plane_height(g, x2, y2)};
        if (!b.contains(g2)) continue;
        ++v.samples_inside;
        const double ug = u(g), ug2 = u(g2);
        for (double lambda : lambdas) {
            const Point gl = horizontal_point(g, g2, lambda);
            const double bound = ug + lambda * (ug2 - ug);
            const double margin = bound - u(gl);
            if (margin < v.worst_margin) v.worst_margin = margin;
            const double tol = 1e-9 * (1.0 + std::abs(ug) + std::abs(ug2));
            if (margin < -tol) {
                v.status = Status::Fail;
                v.segment_witness = SegmentWitness{g, g2, lambda, -margin};
                return v;
            }
        }
    }
    if (v.status == Status::Pass && v.samples_inside * 2 < v.samples_attempted)
        v.status = Status::Inconclusive;
    return v;
}

RadialVerdict radial_criterion(const RadialField& z, double t0, double t1, int n) {
    RadialVerdict v;
    v.t_grid = linspace(t0, t1, n);
    v.margin.reserve(v.t_grid.size());
    v.worst_margin = std::numeric_limits<double>::infinity();
    for (double t : v.t_grid) {
        const double zt = z.z(t);
        if (zt < 0.0) throw std::domain_error("radial_criterion: z(t) < 0 on the grid");
        const double m = 4.0 * zt * (1.0 + z.zpp(t)) - 3.0 * z.zp(t) * z.zp(t);
        v.margin.push_back(m);
        if (m < v.worst_margin) v.worst_margin = m;
    }
    const double tol = 1e-9;
    if (v.worst_margin < -tol) v.status = Status::Fail;
    return v;
}

}  // namespace heis
