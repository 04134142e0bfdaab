#pragma once

#include <optional>
#include <vector>

#include "heis/calculus.hpp"
#include "heis/field.hpp"
#include "heis/region.hpp"

namespace heis {

enum class Status { Pass, Fail, Inconclusive };

struct SegmentWitness {
    Point g, g2;
    double lambda = 0.0;
    double violation = 0.0;  // positive amount by which the inequality fails
};

struct ConvexityVerdict {
    Status status = Status::Pass;
    double worst_margin = 0.0;          // most negative slack seen
    std::optional<Point> hessian_witness;
    std::optional<SegmentWitness> segment_witness;
    int skipped = 0;                    // grid points with non-finite Hessian
    int samples_inside = 0;
    int samples_attempted = 0;
};

// Second-order test: eigenvalues of the symmetrized horizontal Hessian on a
// grid over R. Rejects C0 fields. Grid points where the Hessian is not
// finite (isolated singularities of otherwise smooth fields) are skipped
// and counted.
ConvexityVerdict check_convex_hessian(const Field& u, const Region& R);

// Definitional test: sampled horizontal segments, lambda in {0.1, ..., 0.9}.
ConvexityVerdict check_convex_segments(const Field& u, const Region& R, int n_samples,
                                       uint64_t seed = 1);

struct RadialVerdict {
    Status status = Status::Pass;
    std::vector<double> t_grid;
    std::vector<double> margin;  // 4 z (1 + z'') - 3 (z')^2
    double worst_margin = 0.0;
};

RadialVerdict radial_criterion(const RadialField& z, double t0, double t1, int n);

}  // namespace heis
