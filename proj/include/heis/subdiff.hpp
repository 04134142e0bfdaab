#pragma once

#include <optional>
#include <vector>

#include "heis/calculus.hpp"
#include "heis/convexity.hpp"
#include "heis/field.hpp"
#include "heis/region.hpp"

namespace heis {

struct SubgradientCheck {
    bool ok = false;
    double worst_margin = 0.0;
    Point witness;  // sample attaining the worst margin
};

// Samples H_g inside R.box and reports min over samples of
// u(g') - u(g) - <p, xi1(g') - xi1(g)>.
SubgradientCheck verify_subgradient(const Field& u, const Point& g, const HVector& p,
                                    const Region& R, int n, uint64_t seed = 1);

struct SupportValue {
    double theta;
    double value;  // u'(g; (cos theta, sin theta))
};

std::vector<SupportValue> support_values(const Field& u, const Point& g, int n_dirs);

enum class SetKind { Polygon, Segment, Singleton };

struct SubgradientSet {
    SetKind kind = SetKind::Polygon;
    std::vector<HVector> vertices;  // counterclockwise
    double area = 0.0;

    double diameter() const;
};

// Intersection of the half-planes {p : <p, v(theta)> <= u'(g; v(theta))}
// over an angular grid; requires convex u.
SubgradientSet reconstruct_subdifferential(const Field& u, const Point& g, int n_dirs);

// Sampled local horizontal Lipschitz estimate of u near g.
double lipschitz_estimate(const Field& u, const Point& g, double radius = 0.5,
                          int n = 64);

struct DiscImage {
    double radius = 0.0;
    bool attained_at_boundary = false;
};

// Radius R' of the normal-map image of the circle C(t, R):
// sqrt(U_r(R,t)^2 + 4 R^2 U_t(R,t)^2).
double radial_circle_image(const RadialProfile& v, double t, double R);

// Radius of the normal-map image of the open disc D(t, R), by maximizing
// the circle radius over an r-grid in [0, R).
DiscImage disc_image_radius(const RadialProfile& v, double t, double R, int n_r);

struct MonotonicityReport {
    Status status = Status::Pass;
    double worst_vform = 0.0;  // max of r^3 V_tr^2 - V_r V_rr (should be < 0)
    double worst_zform = 0.0;  // min of 16 z^2 + r^4 (16 z - z'^2) (should be >= 0)
    bool has_zform = false;
    double witness_r = 0.0, witness_t = 0.0;
};

MonotonicityReport monotonicity_condition(const RadialProfile& v, const std::vector<double>& r_grid,
                                          const std::vector<double>& t_grid);
MonotonicityReport monotonicity_condition(const RadialField& v, const Region& R);

// Scale factor s with grad_H v = s * grad_H u at a shared zero-level point.
double boundary_scaling(const Field& u, const Field& v, const Point& g_boundary,
                        double tol = 1e-7);

struct SliceRadii {
    double t = 0.0;
    double slice_radius = 0.0;  // radius of the sublevel disc in the slice
    double radius_u = 0.0, radius_v = 0.0;
    double ratio = 0.0;  // radius_v / radius_u
};

struct InclusionReport {
    Status status = Status::Pass;
    std::vector<SliceRadii> slices;
};

// Per-slice disc-radius comparison for radial profiles with the same
// sublevel set {U < 0}. Requires the monotonicity condition for v.
InclusionReport check_inclusion_radial(const RadialProfile& u, const RadialProfile& v,
                                       const std::vector<double>& t_grid,
                                       const std::vector<double>& r_grid);

}  // namespace heis
