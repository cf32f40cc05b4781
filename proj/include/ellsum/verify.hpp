#pragma once

#include "ellsum/family.hpp"

namespace ellsum {

/// Outcome of a sampling-based containment check of the (centered)
/// Minkowski sum against a candidate bounding ellipsoid.
struct ContainmentReport {
    int samples_tested = 0;
    int violations = 0; // samples with margin < -tol
    double worst_margin = 0.0;
    double tol = 0.0;
};

/// Draws sum_k F_k X_k G_k with each X_k sampled independently from the
/// centered summand ellipsoid in the given mode.
Matrix sample_sum_point(const SumProblem& problem, SampleMode mode, std::mt19937_64& rng);

/// Samples n points of the centered Minkowski sum and records the worst
/// membership margin against the centered bounding ellipsoid. Boundary
/// mode gives the strongest check: by convexity, interior points cannot
/// violate when the boundary holds.
ContainmentReport verify_containment(const SumProblem& problem, const BoundingEllipsoid& bounding,
                                     int n_samples, SampleMode mode, double tol,
                                     std::mt19937_64& rng);

/// Exact radius of the 1-D Minkowski sum, sum_k |F_k| sqrt(Q_k R_k) |G_k|.
/// Only defined for q = r = 1; the trace-optimal bounding interval attains
/// it exactly.
double minkowski_radius_1d(const SumProblem& problem);

} // namespace ellsum
