#include "heis/field.hpp"

#include <cmath>

namespace heis {

namespace {

double coord(const Point& g, Var v) {
    switch (v) {
        case Var::X: return g.x;
        case Var::Y: return g.y;
        case Var::T: return g.t;
    }
    return 0.0;
}

Point shifted(Point g, Var v, double h) {
    switch (v) {
        case Var::X: g.x += h; break;
        case Var::Y: g.y += h; break;
        case Var::T: g.t += h; break;
    }
    return g;
}

constexpr size_t idx(Var v) { return static_cast<size_t>(v); }

}  // namespace

Field Field::exact(Expr e) {
    Field f;
    f.f_ = e;
    f.exact_ = true;
    f.smooth_ = uses_abs(e) ? Smoothness::C0 : Smoothness::C2;
    const Var vars[3] = {Var::X, Var::Y, Var::T};
    for (Var v : vars) {
        f.d1_[idx(v)] = diff(e, v);
        for (Var w : vars) f.d2_[idx(v)][idx(w)] = diff(f.d1_[idx(v)], w);
    }
    return f;
}

Field Field::finite_difference(Expr e) {
    Field f;
    f.f_ = std::move(e);
    f.exact_ = false;
    f.smooth_ = uses_abs(f.f_) ? Smoothness::C0 : Smoothness::C2;
    return f;
}

Field Field::from_source(std::string_view src, bool exact_partials) {
    Expr e = parse(src);
    return exact_partials ? exact(std::move(e)) : finite_difference(std::move(e));
}

double Field::operator()(const Point& g) const {
    if (guard_) guard_(g);
    return eval(f_, g);
}

double Field::d1(Var v, const Point& g) const {
    if (guard_) guard_(g);
    if (exact_) return eval(d1_[idx(v)], g);
    const double h = 1e-5 * (1.0 + std::abs(coord(g, v)));
    return (eval(f_, shifted(g, v, h)) - eval(f_, shifted(g, v, -h))) / (2.0 * h);
}

double Field::d2(Var v, Var w, const Point& g) const {
    if (guard_) guard_(g);
    if (exact_) return eval(d2_[idx(v)][idx(w)], g);
    const double hv = 1e-4 * (1.0 + std::abs(coord(g, v)));
    if (v == w) {
        return (eval(f_, shifted(g, v, hv)) - 2.0 * eval(f_, g) + eval(f_, shifted(g, v, -hv))) /
               (hv * hv);
    }
    const double hw = 1e-4 * (1.0 + std::abs(coord(g, w)));
    const double pp = eval(f_, shifted(shifted(g, v, hv), w, hw));
    const double pm = eval(f_, shifted(shifted(g, v, hv), w, -hw));
    const double mp = eval(f_, shifted(shifted(g, v, -hv), w, hw));
    const double mm = eval(f_, shifted(shifted(g, v, -hv), w, -hw));
    return (pp - pm - mp + mm) / (4.0 * hv * hw);
}

RadialField::RadialField(std::string_view z_src) {
    z_ = parse(z_src);
    if (uses_var(z_, Var::X) || uses_var(z_, Var::Y))
        throw std::invalid_argument("radial z must be an expression in t only");
    zp_ = diff(z_, Var::T);
    zpp_ = diff(zp_, Var::T);

    // v = ((x^2+y^2)^2 + z(t))^{1/4}
    Expr x = variable(Var::X), y = variable(Var::Y);
    Expr r2 = add(mul(x, x), mul(y, y));
    Expr v = pow(add(mul(r2, r2), z_), constant(0.25));
    v3d_ = Field::exact(v);
    Expr z_copy = z_;
    v3d_.set_domain_guard([z_copy](const Point& g) {
        if (eval(z_copy, g) < 0.0)
            throw std::domain_error("radial field: z(t) < 0 at t=" + std::to_string(g.t));
    });
}

double RadialField::z(double t) const { return eval(z_, {0.0, 0.0, t}); }
double RadialField::zp(double t) const { return eval(zp_, {0.0, 0.0, t}); }
double RadialField::zpp(double t) const { return eval(zpp_, {0.0, 0.0, t}); }

RadialProfile RadialField::profile() const {
    Expr r = variable(Var::X);
    Expr r4 = pow(r, constant(4.0));
    RadialProfile p{Field::exact(pow(add(r4, z_), constant(0.25)))};
    Expr z_copy = z_;
    p.u.set_domain_guard([z_copy](const Point& g) {
        if (eval(z_copy, g) < 0.0)
            throw std::domain_error("radial field: z(t) < 0 at t=" + std::to_string(g.t));
    });
    return p;
}

RadialProfile RadialProfile::scaled(double s) const {
    return {Field::exact(mul(constant(s), u.expr()))};
}

RadialProfile RadialProfile::from_source(std::string_view src) {
    Expr e = parse(src);
    if (uses_var(e, Var::Y))
        throw std::invalid_argument("radial profile must be an expression in (r, t)");
    return {Field::exact(std::move(e))};
}

}  // namespace heis
