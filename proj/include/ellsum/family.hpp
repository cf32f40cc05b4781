#pragma once

#include "ellsum/sum_problem.hpp"

namespace ellsum {

/// Strictly positive per-term weights. `normalized` records that the
/// vector lies on the slice tr(R(alpha)) = r of the problem it was
/// normalized against.
class AlphaVector {
public:
    explicit AlphaVector(Vector values, bool normalized = false);

    const Vector& values() const { return values_; }
    double operator[](int k) const { return values_(k); }
    int size() const { return static_cast<int>(values_.size()); }
    bool normalized() const { return normalized_; }

private:
    Vector values_;
    bool normalized_;
};

/// One member of the weight-parameterized family of bounding ellipsoids:
///
///     Q(alpha) = sum_k (1/alpha_k) F_k Q_k F_k^T
///     R(alpha) = sum_k alpha_k G_k^T R_k G_k
///
/// centered at sum_k F_k C_k G_k. Contains the Minkowski sum for every
/// strictly positive alpha, and the family exhausts the boundary of what
/// the semidefinite feasibility conditions admit.
struct BoundingEllipsoid {
    Matrix Q;
    Matrix R;
    Matrix center;
    AlphaVector alpha;

    MatrixEllipsoid as_ellipsoid() const { return {center, Q, R}; }
    MatrixEllipsoid centered() const {
        return {Matrix::Zero(Q.rows(), R.rows()), Q, R};
    }
};

/// A problem rewritten so that the stacked F has full row rank and the
/// stacked G full column rank, plus the orthonormal factors that map
/// between the reduced and the original ambient space:
///
///     X_original = left_factor * X_reduced * right_factor.
struct PreprocessedProblem {
    SumProblem problem;
    Matrix left_factor;  // q x q', orthonormal columns
    Matrix right_factor; // r' x r, orthonormal rows
    bool changed = false;

    Matrix to_original(const Matrix& X_reduced) const {
        return left_factor * X_reduced * right_factor;
    }
    Matrix to_reduced(const Matrix& X_original) const {
        return left_factor.transpose() * X_original * right_factor.transpose();
    }
};

/// Rank-reduces the ambient space if needed; returns the input unchanged
/// (identity factors) when the stacks already have full rank. Singular
/// values below rank_tol * sigma_max are treated as zero.
PreprocessedProblem preprocess(const SumProblem& problem, double rank_tol = 1e-10);

/// Evaluates the family at the given weights. Throws AssumptionViolation
/// if either shape matrix fails Cholesky, which signals rank-deficient
/// stacks rather than bad weights.
BoundingEllipsoid bounding_ellipsoid(const SumProblem& problem, const AlphaVector& alpha);

/// Rescales alpha onto the slice tr(R(alpha)) = r. Leaves both size
/// criteria of the induced ellipsoid unchanged.
AlphaVector normalize(const SumProblem& problem, const AlphaVector& alpha);

/// Eigenvalue test of the two semidefinite feasibility conditions for a
/// candidate (P, R) with P = Q^{-1}:
///
///     blockdiag_k(alpha_k Q_k^{-1}) - F^T P F  >= -tol
///     R - sum_k alpha_k G_k^T R_k G_k          >= -tol
///
/// alpha may contain zeros here. The parameterized family satisfies both
/// with equality, hence the nonzero default slack.
bool check_lmi_feasibility(const SumProblem& problem, const Matrix& P, const Matrix& R,
                           const Vector& alpha, double tol = 1e-8);

/// True iff Q - Q(alpha) and R - R(alpha) are both >= -tol * I, which
/// certifies that the candidate (Q, R) contains the family member at
/// alpha (and therefore the Minkowski sum).
bool certify_dominance(const SumProblem& problem, const AlphaVector& alpha, const Matrix& Q,
                       const Matrix& R, double tol = 1e-8);

} // namespace ellsum
