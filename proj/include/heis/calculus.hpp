#pragma once

#include <utility>

#include "heis/field.hpp"

namespace heis {

// 2x2 symmetric matrix [[xx, xy], [xy, yy]].
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
    double trace() const { return xx + yy; }
    double norm() const;
    // Eigenvalues, ascending.
    std::pair<double, double> eigenvalues() const;
};

// Horizontal Hessian [[XXu, XYu], [YXu, YYu]].
struct Hessian2 {
    double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

    Sym2 sym() const { return {xx, 0.5 * (xy + yx), yy}; }
    double det() const { return xx * yy - xy * yx; }
};

double apply_X(const Field& u, const Point& g);
double apply_Y(const Field& u, const Point& g);
double apply_T(const Field& u, const Point& g);

HVector horizontal_gradient(const Field& u, const Point& g);
Hessian2 horizontal_hessian(const Field& u, const Point& g);
Sym2 symmetrized_hessian(const Field& u, const Point& g);

// X(Yu) - Y(Xu) + 4 Tu by nested application of the fields (symbolic for
// exact fields, difference quotients of Xu/Yu otherwise); the structure
// constant makes this identically zero.
double commutator_residual(const Field& u, const Point& g);

struct LimitResult {
    double value = 0.0;
    double order = 0.0;   // estimated convergence order of the raw quotients
    bool converged = false;
    bool monotone = true;  // quotient non-increasing as lambda decreases
};

// One-sided dilation limit (u(g delta_lambda(h)) - u(g)) / lambda with
// Richardson extrapolation over lambda_k = 2^-k, k = 3..20.
LimitResult pansu_differential(const Field& u, const Point& g, const Point& h);

// u'(g; v) for horizontal v != 0. With convex=true the difference quotient
// is checked to be non-increasing as lambda decreases.
LimitResult directional_derivative(const Field& u, const Point& g, const HVector& v,
                                   bool convex = false);

}  // namespace heis
