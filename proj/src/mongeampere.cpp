#include "heis/mongeampere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heis {

namespace {

void require_c2(const Field& u, const char* op) {
    if (u.smoothness() == Smoothness::C0)
        throw std::invalid_argument(std::string(op) + ": field is not C2");
}

double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
    if (hi - lo == 1) return v[lo];
    const size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

double ma_density(const Field& u, const Point& g) {
    require_c2(u, "ma_density");
    const double tu = apply_T(u, g);
    return symmetrized_hessian(u, g).det() + 4.0 * tu * tu;
}

double sma_operator(const Field& u, const Point& g) {
    require_c2(u, "sma_operator");
    const double tu = apply_T(u, g);
    return symmetrized_hessian(u, g).det() + 12.0 * tu * tu;
}

double jacobian_identity_residual(const Field& u, const Point& g) {
    const Hessian2 h = horizontal_hessian(u, g);
    const double tu = apply_T(u, g);
    return std::abs(h.det() - h.sym().det() - 4.0 * tu * tu);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate of the i-th Legendre root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

double ma_measure(const Field& u, const Box& box, const QuadratureSpec& q,
                  bool* maybe_signed, bool convexity_checked) {
    require_c2(u, "ma_measure");
    if (q.subdivisions < 1) throw std::invalid_argument("ma_measure: subdivisions < 1");
    if (maybe_signed) *maybe_signed = !convexity_checked;

    std::vector<double> nodes, weights;
    if (q.rule == QuadratureSpec::Rule::Midpoint) {
        nodes = {0.0};
        weights = {2.0};
    } else {
        gauss_legendre(q.order, nodes, weights);
    }
    const int m = q.subdivisions;
    const size_t np = nodes.size();
    const double hx = (box.x1 - box.x0) / m;
    const double hy = (box.y1 - box.y0) / m;
    const double ht = (box.t1 - box.t0) / m;

    std::vector<double> cells;
    cells.reserve(static_cast<size_t>(m) * m * m);
    for (int ix = 0; ix < m; ++ix) {
        for (int iy = 0; iy < m; ++iy) {
            for (int it = 0; it < m; ++it) {
                const double cx = box.x0 + (ix + 0.5) * hx;
                const double cy = box.y0 + (iy + 0.5) * hy;
                const double ct = box.t0 + (it + 0.5) * ht;
                double cell = 0.0;
                for (size_t a = 0; a < np; ++a)
                    for (size_t b = 0; b < np; ++b)
                        for (size_t c = 0; c < np; ++c) {
                            const Point g{cx + 0.5 * hx * nodes[a], cy + 0.5 * hy * nodes[b],
                                          ct + 0.5 * ht * nodes[c]};
                            cell += weights[a] * weights[b] * weights[c] * ma_density(u, g);
                        }
                cells.push_back(cell * hx * hy * ht / 8.0);
            }
        }
    }
    return pairwise_sum(cells, 0, cells.size());
}

}  // namespace heis
