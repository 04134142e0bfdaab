#pragma once

#include <array>
#include <functional>
#include <optional>

#include "heis/expr.hpp"
#include "heis/point.hpp"

namespace heis {

enum class Smoothness { C0, C1, C2 };

// Evaluatable scalar function on H^1 with Euclidean partials up to order 2,
// either symbolic or by central finite differences.
class Field {
public:
    static Field exact(Expr e);
    static Field finite_difference(Expr e);
    static Field from_source(std::string_view src, bool exact_partials = true);

    double operator()(const Point& g) const;
    double d1(Var v, const Point& g) const;
    double d2(Var v, Var w, const Point& g) const;

    Smoothness smoothness() const { return smooth_; }
    bool exact_partials() const { return exact_; }
    const Expr& expr() const { return f_; }

    // Optional evaluation-domain guard, checked before every evaluation.
    void set_domain_guard(std::function<void(const Point&)> guard) { guard_ = std::move(guard); }

    Field() = default;  // empty field; build with exact()/finite_difference()

private:
    Expr f_;
    std::array<Expr, 3> d1_{};          // x, y, t
    std::array<std::array<Expr, 3>, 3> d2_{};
    bool exact_ = true;
    Smoothness smooth_ = Smoothness::C2;
    std::function<void(const Point&)> guard_;
};

struct RadialProfile;

// The radial family v(x,y,t) = ((x^2+y^2)^2 + z(t))^{1/4}, z positive and C2.
class RadialField {
public:
    explicit RadialField(std::string_view z_src);

    double z(double t) const;
    double zp(double t) const;
    double zpp(double t) const;

    // v as a field on H^1; evaluation requires z(t) > 0.
    const Field& field3d() const { return v3d_; }
    // Profile U(r,t) = (r^4 + z(t))^{1/4}.
    RadialProfile profile() const;

private:
    Expr z_, zp_, zpp_;
    Field v3d_;
};

// Profile U(r,t) of a radial function, with partials needed by the
// normal-map and monotonicity computations. The underlying expression
// uses x for r.
struct RadialProfile {
    Field u;

    double value(double r, double t) const { return u({r, 0.0, t}); }
    double dr(double r, double t) const { return u.d1(Var::X, {r, 0.0, t}); }
    double dt(double r, double t) const { return u.d1(Var::T, {r, 0.0, t}); }
    double drr(double r, double t) const { return u.d2(Var::X, Var::X, {r, 0.0, t}); }
    double dtr(double r, double t) const { return u.d2(Var::T, Var::X, {r, 0.0, t}); }

    RadialProfile scaled(double s) const;
    static RadialProfile from_source(std::string_view src);  // expression in (r, t)
};

}  // namespace heis
