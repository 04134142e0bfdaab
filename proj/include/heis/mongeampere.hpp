#pragma once

#include <vector>

#include "heis/calculus.hpp"
#include "heis/field.hpp"
#include "heis/region.hpp"

namespace heis {

struct QuadratureSpec {
    enum class Rule { Midpoint, GaussLegendre };
    Rule rule = Rule::GaussLegendre;
    int order = 5;         // points per axis per cell (Gauss-Legendre)
    int subdivisions = 8;  // cells per axis

    static QuadratureSpec defaults() { return {}; }
};

// det [grad_H^2 u]* + 4 (Tu)^2
double ma_density(const Field& u, const Point& g);

// det [grad_H^2 u]* + 12 (Tu)^2
double sma_operator(const Field& u, const Point& g);

// | det(grad_H^2 u) - det [grad_H^2 u]* - 4 (Tu)^2 |
double jacobian_identity_residual(const Field& u, const Point& g);

// Integral of ma_density over the box by tensor-product quadrature with
// pairwise summation. convexity_checked=false only tags the result as
// possibly signed; it does not change the value.
double ma_measure(const Field& u, const Box& box, const QuadratureSpec& q,
                  bool* maybe_signed = nullptr, bool convexity_checked = true);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace heis
