#include "heis/point.hpp"

namespace heis {

Point horizontal_point(const Point& g0, const Point& gp, double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("horizontal_point: lambda outside [0,1]");
    if (!in_horizontal_plane(g0, gp))
        throw std::invalid_argument("horizontal_point: endpoint not in the horizontal plane");
    const Point w = mul(inverse(g0), gp);  // w = (a,b,0) up to tolerance
    return mul(g0, Point{lambda * w.x, lambda * w.y, 0.0});
}

Point plane_intersection_point(const Point& g1, const Point& g2) {
    // H_{g1} intersect H_{g2} projects to the line a*x + b*y = c in the (x,y) plane.
    const double a = 2.0 * (g1.y - g2.y);
    const double b = -2.0 * (g1.x - g2.x);
    const double c = g2.t - g1.t;
    const double n2 = a * a + b * b;
    if (n2 < 1e-24) throw std::invalid_argument("plane_intersection_point: parallel planes (equal xi1)");
    const double mx = 0.5 * (g1.x + g2.x);
    const double my = 0.5 * (g1.y + g2.y);
    // Closest point of the line to the xi1 midpoint.
    const double s = (c - a * mx - b * my) / n2;
    const double px = mx + s * a;
    const double py = my + s * b;
    return {px, py, plane_height(g1, px, py)};
}

}  // namespace heis
