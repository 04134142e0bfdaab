#include "heis/calculus.hpp"

#include <cmath>
#include <vector>

namespace heis {

double Sym2::norm() const {
    return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy);
}

std::pair<double, double> Sym2::eigenvalues() const {
    const double m = 0.5 * (xx + yy);
    const double d = std::hypot(0.5 * (xx - yy), xy);
    return {m - d, m + d};
}

double apply_X(const Field& u, const Point& g) {
    return u.d1(Var::X, g) + 2.0 * g.y * u.d1(Var::T, g);
}

double apply_Y(const Field& u, const Point& g) {
    return u.d1(Var::Y, g) - 2.0 * g.x * u.d1(Var::T, g);
}

double apply_T(const Field& u, const Point& g) { return u.d1(Var::T, g); }

HVector horizontal_gradient(const Field& u, const Point& g) {
    return {apply_X(u, g), apply_Y(u, g)};
}

Hessian2 horizontal_hessian(const Field& u, const Point& g) {
    // Expansion of X(Xu), X(Yu), Y(Xu), Y(Yu) into Euclidean partials.
    const double x = g.x, y = g.y;
    const double ut = u.d1(Var::T, g);
    const double uxx = u.d2(Var::X, Var::X, g);
    const double uxy = u.d2(Var::X, Var::Y, g);
    const double uyy = u.d2(Var::Y, Var::Y, g);
    const double uxt = u.d2(Var::X, Var::T, g);
    const double uyt = u.d2(Var::Y, Var::T, g);
    const double utt = u.d2(Var::T, Var::T, g);

    Hessian2 h;
    h.xx = uxx + 4.0 * y * uxt + 4.0 * y * y * utt;
    h.xy = uxy - 2.0 * ut - 2.0 * x * uxt + 2.0 * y * uyt - 4.0 * x * y * utt;
    h.yx = uxy + 2.0 * ut - 2.0 * x * uxt + 2.0 * y * uyt - 4.0 * x * y * utt;
    h.yy = uyy - 4.0 * x * uyt + 4.0 * x * x * utt;
    return h;
}

Sym2 symmetrized_hessian(const Field& u, const Point& g) {
    return horizontal_hessian(u, g).sym();
}

double commutator_residual(const Field& u, const Point& g) {
    if (u.exact_partials()) {
        const Expr f = u.expr();
        const Expr two_x = mul(constant(2.0), variable(Var::X));
        const Expr two_y = mul(constant(2.0), variable(Var::Y));
        auto ax = [&](const Expr& e) { return add(diff(e, Var::X), mul(two_y, diff(e, Var::T))); };
        auto ay = [&](const Expr& e) { return sub(diff(e, Var::Y), mul(two_x, diff(e, Var::T))); };
        return eval(ax(ay(f)), g) - eval(ay(ax(f)), g) + 4.0 * eval(diff(f, Var::T), g);
    }
    // Nested central difference quotients of the first-order applications,
    // with a wider step than the one used inside d1.
    auto d = [&](auto&& field, Var v) {
        const double c = v == Var::X ? g.x : (v == Var::Y ? g.y : g.t);
        const double h = 1e-4 * (1.0 + std::abs(c));
        Point lo = g, hi = g;
        (v == Var::X ? lo.x : v == Var::Y ? lo.y : lo.t) -= h;
        (v == Var::X ? hi.x : v == Var::Y ? hi.y : hi.t) += h;
        return (field(hi) - field(lo)) / (2.0 * h);
    };
    auto yu = [&](const Point& p) { return apply_Y(u, p); };
    auto xu = [&](const Point& p) { return apply_X(u, p); };
    const double xyu = d(yu, Var::X) + 2.0 * g.y * d(yu, Var::T);
    const double yxu = d(xu, Var::Y) - 2.0 * g.x * d(xu, Var::T);
    return xyu - yxu + 4.0 * apply_T(u, g);
}

namespace {

LimitResult extrapolate(const std::vector<double>& q) {
    LimitResult res;
    if (q.size() < 2) {
        res.value = q.empty() ? 0.0 : q.front();
        return res;
    }
    // First-order Richardson on lambda_k = 2^-k: r_k = 2 q_{k+1} - q_k.
    std::vector<double> r(q.size() - 1);
    for (size_t k = 0; k + 1 < q.size(); ++k) r[k] = 2.0 * q[k + 1] - q[k];
    res.value = r.back();
    const double scale = 1.0 + std::abs(res.value);
    res.converged = std::abs(r.back() - r[r.size() - 2]) <= 1e-8 * scale;
    // Estimate order from three consecutive raw quotients.
    const size_t n = q.size();
    const double d1 = q[n - 2] - q[n - 3];
    const double d2 = q[n - 1] - q[n - 2];
    if (d1 != 0.0 && d2 != 0.0 && d2 / d1 > 0.0) res.order = std::log2(d1 / d2);
    if (!std::isfinite(res.value)) res.converged = false;
    return res;
}

}  // namespace

LimitResult pansu_differential(const Field& u, const Point& g, const Point& h) {
    const double u0 = u(g);
    std::vector<double> q;
    q.reserve(18);
    for (int k = 3; k <= 20; ++k) {
        const double lambda = std::ldexp(1.0, -k);
        q.push_back((u(mul(g, dilate(lambda, h))) - u0) / lambda);
    }
    return extrapolate(q);
}

LimitResult directional_derivative(const Field& u, const Point& g, const HVector& v,
                                   bool convex) {
    if (v.norm() == 0.0) throw std::invalid_argument("directional_derivative: zero direction");
    const double u0 = u(g);
    std::vector<double> q;
    q.reserve(18);
    for (int k = 3; k <= 20; ++k) {
        const double lambda = std::ldexp(1.0, -k);
        q.push_back((u(mul(g, Point{lambda * v.a, lambda * v.b, 0.0})) - u0) / lambda);
    }
    LimitResult res = extrapolate(q);
    if (convex) {
        for (size_t k = 0; k + 1 < q.size(); ++k) {
            if (q[k + 1] > q[k] + 1e-10 * (1.0 + std::abs(q[k]))) {
                res.monotone = false;
                break;
            }
        }
    }
    return res;
}

}  // namespace heis
