#pragma once

#include <Eigen/Dense>

#include "ellsum/errors.hpp"

namespace ellsum {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Returns (A + A^T)/2. Throws InvalidInput if the asymmetry exceeds
/// 1e-8 relative Frobenius error; serialization round-off is tolerated,
/// genuinely unsymmetric input is not.
Matrix symmetrized(const Matrix& A, const char* name);

/// Cholesky factorization of a symmetric matrix; throws
/// NotPositiveDefinite (with `what` in the message) on failure.
Eigen::LLT<Matrix> cholesky(const Matrix& A, const char* what);

/// log det from an existing Cholesky factor.
double logdet(const Eigen::LLT<Matrix>& llt);

/// Inverse of an SPD matrix from its Cholesky factor.
Matrix spd_inverse(const Eigen::LLT<Matrix>& llt);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& symmetric);

/// Largest singular value.
double spectral_norm(const Matrix& A);

/// Symmetric PSD square root via eigendecomposition. Rejects matrices
/// whose smallest eigenvalue falls below 1e-14 * lambda_max: near-singular
/// shapes are an error, not something to repair silently.
Matrix spd_sqrt(const Matrix& A, const char* what);

} // namespace ellsum
