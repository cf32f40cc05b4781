#include "ellsum/ellipsoid.hpp"

#include <cmath>
#include <string>

namespace ellsum {

MatrixEllipsoid::MatrixEllipsoid(Matrix center, Matrix Q, Matrix R)
    : C_(std::move(center)),
      Q_(symmetrized(Q, "Q")),
      R_(symmetrized(R, "R")) {
    if (C_.rows() != Q_.rows() || C_.cols() != R_.rows()) {
        throw InvalidInput("MatrixEllipsoid: center is " + std::to_string(C_.rows()) + "x" +
                           std::to_string(C_.cols()) + " but shapes give " +
                           std::to_string(Q_.rows()) + "x" + std::to_string(R_.rows()));
    }
    Q_llt_ = cholesky(Q_, "Q");
    cholesky(R_, "R");
    Q_sqrt_ = spd_sqrt(Q_, "Q");
    R_sqrt_ = spd_sqrt(R_, "R");
    R_norm_ = spectral_norm(R_);
}

double MatrixEllipsoid::membership_margin(const Matrix& X) const {
    if (X.rows() != left_dim() || X.cols() != right_dim()) {
        throw InvalidInput("membership_margin: X is " + std::to_string(X.rows()) + "x" +
                           std::to_string(X.cols()) + ", expected " + std::to_string(left_dim()) +
                           "x" + std::to_string(right_dim()));
    }
    const Matrix D = X - C_;
    Matrix M = R_ - D.transpose() * Q_llt_.solve(D);
    M = 0.5 * (M + M.transpose());
    return min_eigenvalue(M);
}

Matrix MatrixEllipsoid::sample(SampleMode mode, std::mt19937_64& rng) const {
    const Matrix S = sample_spectral_ball(left_dim(), right_dim(), mode, rng);
    return C_ + Q_sqrt_ * S * R_sqrt_;
}

Matrix sample_spectral_ball(Index q, Index r, SampleMode mode, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix S(q, r);
    double norm = 0.0;
    do {
        for (Index i = 0; i < q; ++i) {
            for (Index j = 0; j < r; ++j) {
                S(i, j) = gauss(rng);
            }
        }
        norm = spectral_norm(S);
    } while (norm == 0.0);
    S /= norm;
    if (mode == SampleMode::Interior) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double u = 1.0 - unif(rng); // (0, 1]
        S *= std::pow(u, 1.0 / static_cast<double>(q * r));
    }
    return S;
}

PiMatrix to_pi(const MatrixEllipsoid& e) {
    const Index q = e.left_dim();
    const Index r = e.right_dim();
    const Eigen::LLT<Matrix> llt = cholesky(e.Q(), "Q");
    const Matrix W = llt.solve(e.center()); // Q^{-1} C
    PiMatrix p;
    p.q = q;
    p.r = r;
    p.m.resize(r + q, r + q);
    Matrix topLeft = e.R() - e.center().transpose() * W;
    p.m.topLeftCorner(r, r) = 0.5 * (topLeft + topLeft.transpose());
    p.m.topRightCorner(r, q) = W.transpose();
    p.m.bottomLeftCorner(q, r) = W;
    p.m.bottomRightCorner(q, q) = -spd_inverse(llt);
    return p;
}

MatrixEllipsoid from_pi(const PiMatrix& p) {
    if (p.q <= 0 || p.r <= 0 || p.m.rows() != p.q + p.r || p.m.cols() != p.q + p.r) {
        throw InvalidInput("from_pi: block dimensions do not match the stored matrix");
    }
    const Matrix Qinv = -p.m.bottomRightCorner(p.q, p.q);
    if (!Qinv.allFinite()) {
        throw InvalidInput("from_pi: Pi has non-finite entries");
    }
    Eigen::LLT<Matrix> llt(symmetrized(Qinv, "Pi bottom-right block"));
    if (llt.info() != Eigen::Success) {
        throw InvalidInput("from_pi: bottom-right block of Pi must be negative definite");
    }
    const Matrix C = llt.solve(p.m.bottomLeftCorner(p.q, p.r)); // Q * (Q^{-1} C)
    const Matrix R = p.m.topLeftCorner(p.r, p.r) + C.transpose() * Qinv * C;
    return {C, spd_inverse(llt), R};
}

double size_trace(const Matrix& Q, const Matrix& R) {
    cholesky(symmetrized(Q, "Q"), "Q");
    cholesky(symmetrized(R, "R"), "R");
    return R.trace() * Q.trace();
}

double size_logdet(const Matrix& Q, const Matrix& R) {
    const auto Qllt = cholesky(symmetrized(Q, "Q"), "Q");
    const auto Rllt = cholesky(symmetrized(R, "R"), "R");
    return static_cast<double>(Q.rows()) * logdet(Rllt) +
           static_cast<double>(R.rows()) * logdet(Qllt);
}

} // namespace ellsum
