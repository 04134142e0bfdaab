#include "heis/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace heis {

namespace {

// Clip a convex polygon against the half-plane {p : <p, n> <= c}.
std::vector<HVector> clip_halfplane(const std::vector<HVector>& poly, const HVector& n,
                                    double c) {
    std::vector<HVector> out;
    const size_t m = poly.size();
    out.reserve(m + 1);
    for (size_t i = 0; i < m; ++i) {
        const HVector& a = poly[i];
        const HVector& b = poly[(i + 1) % m];
        const double da = dot(a, n) - c;
        const double db = dot(b, n) - c;
        if (da <= 0.0) out.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            const double s = da / (da - db);
            out.push_back({a.a + s * (b.a - a.a), a.b + s * (b.b - a.b)});
        }
    }
    return out;
}

double polygon_area(const std::vector<HVector>& poly) {
    double a = 0.0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) a += cross(poly[i], poly[(i + 1) % m]);
    return 0.5 * a;
}

std::vector<HVector> dedupe(const std::vector<HVector>& poly, double tol) {
    std::vector<HVector> out;
    for (const auto& p : poly) {
        if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
    }
    if (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
    return out;
}

}  // namespace

SubgradientCheck verify_subgradient(const Field& u, const Point& g, const HVector& p,
                                    const Region& R, int n, uint64_t seed) {
    SubgradientCheck res;
    res.worst_margin = std::numeric_limits<double>::infinity();
    res.witness = g;
    Rng rng(seed);
    const Box& b = R.box;
    const double u0 = u(g);
    // Stratified (x', y') over an s x s subdivision of the box face.
    const int s = std::max(1, static_cast<int>(std::floor(std::sqrt(double(n)))));
    int taken = 0;
    for (int k = 0; taken < n && k < 4 * n + 16; ++k) {
        const int cell = k % (s * s);
        const int ci = cell % s, cj = cell / s;
        const double x2 = b.x0 + (b.x1 - b.x0) * (ci + rng.uniform()) / s;
        const double y2 = b.y0 + (b.y1 - b.y0) * (cj + rng.uniform()) / s;
        const Point g2{x2, y2, plane_height(g, x2, y2)};
        if (!b.contains(g2)) continue;
        ++taken;
        const double margin = u(g2) - u0 - dot(p, xi1(g2) - xi1(g));
        if (margin < res.worst_margin) {
            res.worst_margin = margin;
            res.witness = g2;
        }
    }
    const double tol = 1e-9 * (1.0 + std::abs(u0));
    res.ok = res.worst_margin >= -tol;
    return res;
}

std::vector<SupportValue> support_values(const Field& u, const Point& g, int n_dirs) {
    std::vector<SupportValue> out;
    out.reserve(static_cast<size_t>(n_dirs));
    for (int k = 0; k < n_dirs; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n_dirs;
        const HVector v{std::cos(theta), std::sin(theta)};
        out.push_back({theta, directional_derivative(u, g, v, true).value});
    }
    return out;
}

double lipschitz_estimate(const Field& u, const Point& g, double radius, int n) {
    double L = 0.0;
    const double u0 = u(g);
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        for (double rho : {0.25 * radius, 0.5 * radius, radius}) {
            const Point g2 = mul(g, Point{rho * std::cos(theta), rho * std::sin(theta), 0.0});
            L = std::max(L, std::abs(u(g2) - u0) / rho);
        }
    }
    return L;
}

double SubgradientSet::diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            d = std::max(d, (vertices[i] - vertices[j]).norm());
    return d;
}

SubgradientSet reconstruct_subdifferential(const Field& u, const Point& g, int n_dirs) {
    if (n_dirs < 8) throw std::invalid_argument("reconstruct_subdifferential: need >= 8 directions");
    const double L = std::max(lipschitz_estimate(u, g), 1e-6);
    const double side = 4.0 * L;
    // Slack keeps the intersection nonempty when every supporting line passes
    // through the same point up to the error of the directional derivatives.
    const double slack = 1e-7 * (1.0 + L);
    std::vector<HVector> poly = {{-side, -side}, {side, -side}, {side, side}, {-side, side}};
    for (int k = 0; k < n_dirs; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n_dirs;
        const HVector v{std::cos(theta), std::sin(theta)};
        const double h = directional_derivative(u, g, v, true).value;
        poly = clip_halfplane(poly, v, h + slack);
        if (poly.empty())
            throw std::runtime_error(
                "reconstruct_subdifferential: empty intersection (field not convex at point?)");
    }
    SubgradientSet set;
    set.vertices = dedupe(poly, 1e-9);
    set.area = std::abs(polygon_area(set.vertices));
    const double diam = set.diameter();
    if (set.vertices.size() <= 1 || diam <= 20.0 * slack) {
        set.kind = SetKind::Singleton;
        if (set.vertices.size() > 1) {
            HVector c{0, 0};
            for (const auto& p : set.vertices) c = c + p;
            set.vertices = {{c.a / set.vertices.size(), c.b / set.vertices.size()}};
        }
    } else if (set.area <= 20.0 * slack * diam) {
        set.kind = SetKind::Segment;
    } else {
        set.kind = SetKind::Polygon;
    }
    return set;
}

double radial_circle_image(const RadialProfile& v, double t, double R) {
    const double ur = v.dr(R, t);
    const double ut = v.dt(R, t);
    if (!std::isfinite(ur) || !std::isfinite(ut))
        throw std::domain_error("radial_circle_image: profile not smooth at (R, t)");
    return std::sqrt(ur * ur + 4.0 * R * R * ut * ut);
}

DiscImage disc_image_radius(const RadialProfile& v, double t, double R, int n_r) {
    DiscImage d;
    if (R <= 0.0) return d;
    double best = 0.0;
    double last = 0.0;
    const int n = std::max(2, n_r);
    // The supremum over the open disc equals the max over the closed r-range,
    // so the grid includes r = R; attained_at_boundary records whether the
    // supremum is only approached there.
    for (int i = 0; i <= n; ++i) {
        const double r = R * i / n;
        const double rr = radial_circle_image(v, t, r);
        if (rr > best) best = rr;
        last = rr;
    }
    d.radius = best;
    d.attained_at_boundary = best <= last + 1e-12 * (1.0 + best);
    return d;
}

MonotonicityReport monotonicity_condition(const RadialProfile& v,
                                          const std::vector<double>& r_grid,
                                          const std::vector<double>& t_grid) {
    MonotonicityReport rep;
    rep.worst_vform = -std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        for (double t : t_grid) {
            const double val =
                r * r * r * v.dtr(r, t) * v.dtr(r, t) - v.dr(r, t) * v.drr(r, t);
            if (val > rep.worst_vform) {
                rep.worst_vform = val;
                rep.witness_r = r;
                rep.witness_t = t;
            }
        }
    }
    if (rep.worst_vform > 1e-9) rep.status = Status::Fail;
    return rep;
}

MonotonicityReport monotonicity_condition(const RadialField& v, const Region& R) {
    const auto r_grid = linspace(std::max(0.0, R.box.x0), R.box.x1, R.nx);
    const auto t_grid = linspace(R.box.t0, R.box.t1, R.nt);
    MonotonicityReport rep = monotonicity_condition(v.profile(), r_grid, t_grid);
    rep.has_zform = true;
    rep.worst_zform = std::numeric_limits<double>::infinity();
    for (double r : r_grid) {
        for (double t : t_grid) {
            const double zt = v.z(t), zp = v.zp(t);
            const double r4 = r * r * r * r;
            const double val = 16.0 * zt * zt + r4 * (16.0 * zt - zp * zp);
            if (val < rep.worst_zform) {
                rep.worst_zform = val;
                if (val < -1e-9) {
                    rep.witness_r = r;
                    rep.witness_t = t;
                }
            }
        }
    }
    rep.status = rep.worst_zform >= -1e-9 ? Status::Pass : Status::Fail;
    return rep;
}

double boundary_scaling(const Field& u, const Field& v, const Point& g, double tol) {
    if (std::abs(u(g)) > tol || std::abs(v(g)) > tol)
        throw std::invalid_argument("boundary_scaling: point is not on the shared zero level set");
    const HVector gu = horizontal_gradient(u, g);
    const HVector gv = horizontal_gradient(v, g);
    const double nu = gu.norm();
    if (nu <= tol) throw std::invalid_argument("boundary_scaling: grad_H u vanishes");
    if (std::abs(cross(gu, gv)) > tol * (1.0 + nu * gv.norm()))
        throw std::runtime_error("boundary_scaling: gradients not parallel");
    const double s = gv.norm() / nu;
    if (s <= 0.0 || s > 1.0 + tol)
        throw std::runtime_error("boundary_scaling: scale factor outside (0, 1]");
    return s;
}

InclusionReport check_inclusion_radial(const RadialProfile& u, const RadialProfile& v,
                                       const std::vector<double>& t_grid,
                                       const std::vector<double>& r_grid) {
    InclusionReport rep;
    // Shared sublevel set: the profiles must agree in sign on the grid.
    for (double t : t_grid) {
        for (double r : r_grid) {
            const double fu = u.value(r, t), fv = v.value(r, t);
            const double tol = 1e-9 * (1.0 + std::abs(fu) + std::abs(fv));
            const int su = fu > tol ? 1 : (fu < -tol ? -1 : 0);
            const int sv = fv > tol ? 1 : (fv < -tol ? -1 : 0);
            if (su * sv < 0)
                throw std::invalid_argument(
                    "check_inclusion_radial: profiles have different sublevel sets");
        }
    }
    for (double t : t_grid) {
        // Slice disc radius: largest grid r still inside {U < 0}.
        double R = 0.0;
        for (double r : r_grid)
            if (u.value(r, t) < 0.0) R = std::max(R, r);
        if (R <= 0.0) continue;
        SliceRadii s;
        s.t = t;
        s.slice_radius = R;
        s.radius_u = disc_image_radius(u, t, R, static_cast<int>(r_grid.size())).radius;
        s.radius_v = disc_image_radius(v, t, R, static_cast<int>(r_grid.size())).radius;
        s.ratio = s.radius_u > 0.0 ? s.radius_v / s.radius_u : 0.0;
        if (s.radius_v > s.radius_u + 1e-9 * (1.0 + s.radius_u)) rep.status = Status::Fail;
        rep.slices.push_back(s);
    }
    if (rep.slices.empty()) rep.status = Status::Inconclusive;
    return rep;
}

}  // namespace heis
