#pragma once

#include <cmath>
#include <stdexcept>

namespace heis {

// Horizontal vector p = aX + bY in the first layer V1.
struct HVector {
    double a = 0.0;
    double b = 0.0;

    double norm() const { return std::hypot(a, b); }

    HVector operator+(const HVector& o) const { return {a + o.a, b + o.b}; }
    HVector operator-(const HVector& o) const { return {a - o.a, b - o.b}; }
    HVector operator*(double s) const { return {a * s, b * s}; }
    HVector operator-() const { return {-a, -b}; }
};

inline double dot(const HVector& p, const HVector& q) { return p.a * q.a + p.b * q.b; }
inline double cross(const HVector& p, const HVector& q) { return p.a * q.b - p.b * q.a; }

// Tangent vector in exponential coordinates, V1 + V2 split.
struct TVector {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    HVector horizontal() const { return {a, b}; }
    double vertical() const { return c; }
};

// Group element g = (x,y,t) of H^1 in exponential coordinates.
struct Point {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

inline Point identity() { return {0.0, 0.0, 0.0}; }

inline Point mul(const Point& g, const Point& h) {
    return {g.x + h.x, g.y + h.y, g.t + h.t + 2.0 * (h.x * g.y - g.x * h.y)};
}

inline Point inverse(const Point& g) { return {-g.x, -g.y, -g.t}; }

inline Point dilate(double lambda, const Point& g) {
    if (lambda < 0.0) throw std::invalid_argument("dilate: lambda must be non-negative");
    return {lambda * g.x, lambda * g.y, lambda * lambda * g.t};
}

// xi_1 projection: horizontal part of exp^{-1}(g).
inline HVector xi1(const Point& g) { return {g.x, g.y}; }

inline double gauge(const Point& g) {
    const double r2 = g.x * g.x + g.y * g.y;
    return std::pow(r2 * r2 + g.t * g.t, 0.25);
}

inline double distance(const Point& g, const Point& h) { return gauge(mul(inverse(g), h)); }

inline double plane_tolerance(const Point& g0) {
    return 1e-9 * (1.0 + std::abs(g0.t));
}

// Height of the horizontal plane H_{g0} over (x,y).
inline double plane_height(const Point& g0, double x, double y) {
    return g0.t + 2.0 * g0.y * x - 2.0 * g0.x * y;
}

inline bool in_horizontal_plane(const Point& g0, const Point& g, double tol) {
    return std::abs(g.t - plane_height(g0, g.x, g.y)) <= tol;
}

inline bool in_horizontal_plane(const Point& g0, const Point& g) {
    return in_horizontal_plane(g0, g, plane_tolerance(g0));
}

// Point g0 * delta_lambda(g0^{-1} gp) on the horizontal segment [g0, gp].
Point horizontal_point(const Point& g0, const Point& gp, double lambda);

// A canonical point on the line H_{g1} intersect H_{g2}; requires xi1(g1) != xi1(g2).
Point plane_intersection_point(const Point& g1, const Point& g2);

}  // namespace heis
