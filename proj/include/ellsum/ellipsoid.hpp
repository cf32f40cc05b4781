#pragma once

#include <random>

#include "ellsum/linalg.hpp"

namespace ellsum {

enum class SampleMode { Interior, Boundary };

/// Bounded set of q x r matrices
///
///     { X : (X - C)^T Q^{-1} (X - C) <= R }
///
/// with Q (q x q) and R (r x r) symmetric positive definite. The
/// representation has one scaling degree of freedom: (C, Q/a, a*R)
/// describes the same set for every a > 0. Setting r = 1, R = 1
/// recovers an ordinary vector ellipsoid.
///
/// Instances are immutable and safe to share across threads.
class MatrixEllipsoid {
public:
    /// Validates shapes, symmetrizes Q and R, and factors them. Throws
    /// InvalidInput on shape/symmetry problems and NotPositiveDefinite
    /// when either shape matrix fails Cholesky or is numerically singular.
    MatrixEllipsoid(Matrix center, Matrix Q, Matrix R);

    const Matrix& center() const { return C_; }
    const Matrix& Q() const { return Q_; }
    const Matrix& R() const { return R_; }
    Index left_dim() const { return Q_.rows(); }
    Index right_dim() const { return R_.rows(); }

    /// Scale-aware membership slack: 1e-9 * (1 + ||R||_2).
    double default_tol() const { return 1e-9 * (1.0 + R_norm_); }

    /// Smallest eigenvalue of R - (X-C)^T Q^{-1} (X-C); nonnegative iff
    /// X belongs to the set.
    double membership_margin(const Matrix& X) const;

    bool contains(const Matrix& X, double tol) const {
        return membership_margin(X) >= -tol;
    }
    bool contains(const Matrix& X) const { return contains(X, default_tol()); }

    /// Draws C + Q^{1/2} S R^{1/2} with ||S||_2 <= 1 (Interior) or
    /// ||S||_2 = 1 (Boundary).
    Matrix sample(SampleMode mode, std::mt19937_64& rng) const;

    /// Same shape, center zero.
    MatrixEllipsoid centered() const { return {Matrix::Zero(left_dim(), right_dim()), Q_, R_}; }

private:
    Matrix C_, Q_, R_;
    Eigen::LLT<Matrix> Q_llt_;
    Matrix Q_sqrt_, R_sqrt_;
    double R_norm_ = 0.0;
};

/// Symmetric (r+q) x (r+q) encoding of the same set as the quadratic
/// matrix inequality [I_r; X]^T Pi [I_r; X] >= 0. Block layout:
///
///     [ R - C^T Q^{-1} C    C^T Q^{-1} ]
///     [ Q^{-1} C            -Q^{-1}    ]
struct PiMatrix {
    Matrix m;
    Index q = 0;
    Index r = 0;
};

PiMatrix to_pi(const MatrixEllipsoid& e);

/// Inverse of to_pi. The bottom-right q x q block must be negative
/// definite; otherwise throws InvalidInput.
MatrixEllipsoid from_pi(const PiMatrix& p);

/// Sum of squared semi-axes of the vectorized set: tr(R) * tr(Q),
/// i.e. the trace of the Kronecker product without forming it.
double size_trace(const Matrix& Q, const Matrix& R);

/// Log-volume measure of the vectorized set:
/// q * logdet(R) + r * logdet(Q) = logdet(R (x) Q).
double size_logdet(const Matrix& Q, const Matrix& R);

/// Random q x r matrix with spectral norm <= 1 (Interior) or = 1
/// (Boundary): normal entries scaled to unit spectral norm, then shrunk
/// by u^{1/(qr)}, u uniform on (0,1], in interior mode.
Matrix sample_spectral_ball(Index q, Index r, SampleMode mode, std::mt19937_64& rng);

} // namespace ellsum
