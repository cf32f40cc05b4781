#pragma once

#include <string>
#include <vector>

#include "ellsum/ellipsoid.hpp"

namespace ellsum {

/// One summand F * E * G of a Minkowski sum of linearly transformed
/// matrix ellipsoids. F is q x q_k, the ellipsoid has shape (q_k, r_k),
/// G is r_k x r.
struct SumTerm {
    Matrix F;
    MatrixEllipsoid ellipsoid;
    Matrix G;
    std::string label;
};

/// An ordered list of K summands sharing the ambient dimensions (q, r),
/// together with the per-term products every downstream computation
/// reuses. Terms with F = 0 or G = 0 contribute nothing to the sum and
/// are dropped at construction (with a warning on stderr); a problem
/// with no remaining terms is invalid.
///
/// Immutable after construction.
class SumProblem {
public:
    explicit SumProblem(std::vector<SumTerm> terms);

    int size() const { return static_cast<int>(terms_.size()); } // K
    Index q() const { return q_; }
    Index r() const { return r_; }
    const SumTerm& term(int k) const { return terms_.at(static_cast<std::size_t>(k)); }
    const std::vector<SumTerm>& terms() const { return terms_; }

    /// F_k Q_k F_k^T (q x q).
    const Matrix& left_gram(int k) const { return left_gram_.at(static_cast<std::size_t>(k)); }
    /// G_k^T R_k G_k (r x r).
    const Matrix& right_gram(int k) const { return right_gram_.at(static_cast<std::size_t>(k)); }
    double left_gram_trace(int k) const { return left_gram_trace_.at(static_cast<std::size_t>(k)); }
    double right_gram_trace(int k) const {
        return right_gram_trace_.at(static_cast<std::size_t>(k));
    }
    /// Q_k^{-1}, factored once at construction.
    const Matrix& shape_inverse(int k) const {
        return shape_inverse_.at(static_cast<std::size_t>(k));
    }

    /// Fixed center of every bounding ellipsoid: sum_k F_k C_k G_k.
    const Matrix& center() const { return center_; }

    /// [F_1  F_2 ... F_K], q x (sum_k q_k).
    Matrix stacked_F() const;
    /// [G_1; G_2; ...; G_K], (sum_k r_k) x r.
    Matrix stacked_G() const;

    /// True when the stacked F has full row rank and the stacked G full
    /// column rank (singular values below rank_tol * sigma_max count as
    /// zero).
    bool has_full_rank_stacks(double rank_tol = 1e-10) const;

private:
    std::vector<SumTerm> terms_;
    Index q_ = 0, r_ = 0;
    std::vector<Matrix> left_gram_, right_gram_, shape_inverse_;
    std::vector<double> left_gram_trace_, right_gram_trace_;
    Matrix center_;
};

} // namespace ellsum
