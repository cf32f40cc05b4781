#include "ellsum/verify.hpp"

#include <cmath>
#include <limits>

namespace ellsum {

Matrix sample_sum_point(const SumProblem& problem, SampleMode mode, std::mt19937_64& rng) {
    Matrix X = Matrix::Zero(problem.q(), problem.r());
    for (const SumTerm& t : problem.terms()) {
        const Matrix Xk = t.ellipsoid.sample(mode, rng) - t.ellipsoid.center();
        X += t.F * Xk * t.G;
    }
    return X;
}

ContainmentReport verify_containment(const SumProblem& problem, const BoundingEllipsoid& bounding,
                                     int n_samples, SampleMode mode, double tol,
                                     std::mt19937_64& rng) {
    if (n_samples < 1) {
        throw InvalidInput("verify_containment: n_samples must be at least 1");
    }
    const MatrixEllipsoid hull = bounding.centered();
    ContainmentReport report;
    report.tol = tol;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_samples; ++i) {
        const double margin = hull.membership_margin(sample_sum_point(problem, mode, rng));
        report.worst_margin = std::min(report.worst_margin, margin);
        if (margin < -tol) {
            ++report.violations;
        }
    }
    report.samples_tested = n_samples;
    return report;
}

double minkowski_radius_1d(const SumProblem& problem) {
    if (problem.q() != 1 || problem.r() != 1) {
        throw InvalidInput("minkowski_radius_1d: problem must have q = r = 1");
    }
    // Each transformed summand is the interval of u^T S v over ||S||_2 <= 1
    // with u = Q_k^{1/2} F_k^T and v = R_k^{1/2} G_k, so its radius is
    // ||u|| ||v|| = sqrt(F_k Q_k F_k^T) sqrt(G_k^T R_k G_k); intervals add.
    double radius = 0.0;
    for (int k = 0; k < problem.size(); ++k) {
        radius += std::sqrt(problem.left_gram_trace(k) * problem.right_gram_trace(k));
    }
    return radius;
}

} // namespace ellsum
