#include "ellsum/linalg.hpp"

#include <cmath>
#include <string>

namespace ellsum {

Matrix symmetrized(const Matrix& A, const char* name) {
    if (A.rows() != A.cols()) {
        throw InvalidInput(std::string(name) + ": expected a square matrix, got " +
                           std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
    }
    const double skew = (A - A.transpose()).norm();
    if (skew > 1e-8 * A.norm()) {
        throw InvalidInput(std::string(name) + ": matrix is not symmetric (relative asymmetry " +
                           std::to_string(skew / A.norm()) + ")");
    }
    return 0.5 * (A + A.transpose());
}

Eigen::LLT<Matrix> cholesky(const Matrix& A, const char* what) {
    if (!A.allFinite()) {
        throw NotPositiveDefinite(std::string(what) + ": matrix has non-finite entries");
    }
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite(std::string(what) + ": Cholesky factorization failed");
    }
    return llt;
}

double logdet(const Eigen::LLT<Matrix>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

Matrix spd_inverse(const Eigen::LLT<Matrix>& llt) {
    return llt.solve(Matrix::Identity(llt.rows(), llt.rows()));
}

double min_eigenvalue(const Matrix& symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double spectral_norm(const Matrix& A) {
    if (A.rows() == 1 || A.cols() == 1) {
        return A.norm();
    }
    return Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
}

Matrix spd_sqrt(const Matrix& A, const char* what) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    if (es.info() != Eigen::Success) {
        throw NotPositiveDefinite(std::string(what) + ": eigendecomposition failed");
    }
    const Vector& ev = es.eigenvalues();
    if (ev.minCoeff() < 1e-14 * ev.maxCoeff()) {
        throw NotPositiveDefinite(std::string(what) + ": matrix is singular to working precision");
    }
    return es.eigenvectors() * ev.array().sqrt().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

} // namespace ellsum
