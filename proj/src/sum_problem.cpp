#include "ellsum/sum_problem.hpp"

#include <iostream>
#include <string>
#include <utility>

namespace ellsum {

namespace {

int rank_of(const Matrix& A, double rank_tol) {
    Eigen::JacobiSVD<Matrix> svd(A);
    const Vector& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    int rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > rank_tol * sv(0)) {
            ++rank;
        }
    }
    return rank;
}

} // namespace

SumProblem::SumProblem(std::vector<SumTerm> terms) {
    if (terms.empty()) {
        throw InvalidInput("SumProblem: no terms");
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const SumTerm& t = terms[k];
        if (t.F.cols() != t.ellipsoid.left_dim() || t.G.rows() != t.ellipsoid.right_dim()) {
            throw InvalidInput("SumProblem: term " + std::to_string(k) +
                               ": F/G dimensions do not match the ellipsoid shape");
        }
    }
    q_ = terms.front().F.rows();
    r_ = terms.front().G.cols();
    for (std::size_t k = 0; k < terms.size(); ++k) {
        SumTerm& t = terms[k];
        if (t.F.rows() != q_ || t.G.cols() != r_) {
            throw InvalidInput("SumProblem: term " + std::to_string(k) +
                               " disagrees on the ambient dimensions (q, r)");
        }
        if (t.F.norm() == 0.0 || t.G.norm() == 0.0) {
            std::cerr << "SumProblem: dropping term " << k
                      << " (zero transformation contributes nothing to the sum)\n";
            continue;
        }
        terms_.push_back(std::move(t));
    }
    if (terms_.empty()) {
        throw InvalidInput("SumProblem: all terms have zero transformations");
    }

    center_ = Matrix::Zero(q_, r_);
    for (const SumTerm& t : terms_) {
        const MatrixEllipsoid& e = t.ellipsoid;
        left_gram_.push_back(t.F * e.Q() * t.F.transpose());
        right_gram_.push_back(t.G.transpose() * e.R() * t.G);
        left_gram_trace_.push_back(left_gram_.back().trace());
        right_gram_trace_.push_back(right_gram_.back().trace());
        shape_inverse_.push_back(spd_inverse(cholesky(e.Q(), "term shape Q")));
        center_ += t.F * e.center() * t.G;
    }
}

Matrix SumProblem::stacked_F() const {
    Index cols = 0;
    for (const SumTerm& t : terms_) {
        cols += t.F.cols();
    }
    Matrix F(q_, cols);
    Index at = 0;
    for (const SumTerm& t : terms_) {
        F.middleCols(at, t.F.cols()) = t.F;
        at += t.F.cols();
    }
    return F;
}

Matrix SumProblem::stacked_G() const {
    Index rows = 0;
    for (const SumTerm& t : terms_) {
        rows += t.G.rows();
    }
    Matrix G(rows, r_);
    Index at = 0;
    for (const SumTerm& t : terms_) {
        G.middleRows(at, t.G.rows()) = t.G;
        at += t.G.rows();
    }
    return G;
}

bool SumProblem::has_full_rank_stacks(double rank_tol) const {
    return rank_of(stacked_F(), rank_tol) == q_ && rank_of(stacked_G(), rank_tol) == r_;
}

} // namespace ellsum
