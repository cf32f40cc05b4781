#include "ellsum/family.hpp"

#include <string>
#include <utility>

namespace ellsum {

AlphaVector::AlphaVector(Vector values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
    if (values_.size() == 0) {
        throw InvalidInput("AlphaVector: empty");
    }
    for (Index k = 0; k < values_.size(); ++k) {
        if (!(values_(k) > 0.0)) {
            throw InvalidInput("AlphaVector: entry " + std::to_string(k) +
                               " is not strictly positive");
        }
    }
}

PreprocessedProblem preprocess(const SumProblem& problem, double rank_tol) {
    const Matrix F = problem.stacked_F();
    const Matrix G = problem.stacked_G();

    Eigen::JacobiSVD<Matrix> svdF(F, Eigen::ComputeThinU);
    Eigen::JacobiSVD<Matrix> svdG(G, Eigen::ComputeThinV);
    if (svdF.singularValues()(0) == 0.0 || svdG.singularValues()(0) == 0.0) {
        throw InvalidInput("preprocess: stacked transformation matrices are zero");
    }
    auto rank_of = [rank_tol](const Vector& sv) {
        Index rank = 0;
        for (Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > rank_tol * sv(0)) {
                ++rank;
            }
        }
        return rank;
    };
    const Index rank_F = rank_of(svdF.singularValues());
    const Index rank_G = rank_of(svdG.singularValues());

    if (rank_F == problem.q() && rank_G == problem.r()) {
        return {problem, Matrix::Identity(problem.q(), problem.q()),
                Matrix::Identity(problem.r(), problem.r()), false};
    }

    // F = F_bar * (F_bar^T F) and G = (G G_bar^T) * G_bar with orthonormal
    // factors, so each term maps to (F_bar^T F_k, E_k, G_k G_bar^T). A side
    // that already has full rank keeps its identity factor.
    const Matrix F_bar = rank_F == problem.q()
                             ? Matrix(Matrix::Identity(problem.q(), problem.q()))
                             : Matrix(svdF.matrixU().leftCols(rank_F));
    const Matrix G_bar = rank_G == problem.r()
                             ? Matrix(Matrix::Identity(problem.r(), problem.r()))
                             : Matrix(svdG.matrixV().leftCols(rank_G).transpose());

    std::vector<SumTerm> reduced;
    reduced.reserve(problem.terms().size());
    for (const SumTerm& t : problem.terms()) {
        reduced.push_back({F_bar.transpose() * t.F, t.ellipsoid, t.G * G_bar.transpose(), t.label});
    }
    return {SumProblem(std::move(reduced)), F_bar, G_bar, true};
}

BoundingEllipsoid bounding_ellipsoid(const SumProblem& problem, const AlphaVector& alpha) {
    if (alpha.size() != problem.size()) {
        throw InvalidInput("bounding_ellipsoid: alpha has " + std::to_string(alpha.size()) +
                           " entries for " + std::to_string(problem.size()) + " terms");
    }
    Matrix Q = Matrix::Zero(problem.q(), problem.q());
    Matrix R = Matrix::Zero(problem.r(), problem.r());
    for (int k = 0; k < problem.size(); ++k) {
        Q += problem.left_gram(k) / alpha[k];
        R += alpha[k] * problem.right_gram(k);
    }
    try {
        cholesky(Q, "Q(alpha)");
        cholesky(R, "R(alpha)");
    } catch (const NotPositiveDefinite& e) {
        throw AssumptionViolation(std::string("bounding_ellipsoid: ") + e.what() +
                                  " (stacked F/G are rank deficient; preprocess the problem)");
    }
    return {std::move(Q), std::move(R), problem.center(), alpha};
}

AlphaVector normalize(const SumProblem& problem, const AlphaVector& alpha) {
    if (alpha.size() != problem.size()) {
        throw InvalidInput("normalize: alpha size does not match the problem");
    }
    double trace_R = 0.0;
    for (int k = 0; k < problem.size(); ++k) {
        trace_R += alpha[k] * problem.right_gram_trace(k);
    }
    const double factor = static_cast<double>(problem.r()) / trace_R;
    return AlphaVector(factor * alpha.values(), true);
}

bool check_lmi_feasibility(const SumProblem& problem, const Matrix& P, const Matrix& R,
                           const Vector& alpha, double tol) {
    if (alpha.size() != problem.size()) {
        throw InvalidInput("check_lmi_feasibility: alpha size does not match the problem");
    }
    for (Index k = 0; k < alpha.size(); ++k) {
        if (alpha(k) < 0.0) {
            throw InvalidInput("check_lmi_feasibility: alpha must be nonnegative");
        }
    }
    const Matrix Psym = symmetrized(P, "P");
    const Matrix Rsym = symmetrized(R, "R");
    if (Psym.rows() != problem.q() || Rsym.rows() != problem.r()) {
        throw InvalidInput("check_lmi_feasibility: P/R dimensions do not match the problem");
    }

    const Matrix F = problem.stacked_F();
    Matrix block = -F.transpose() * Psym * F;
    Index at = 0;
    for (int k = 0; k < problem.size(); ++k) {
        const Index qk = problem.term(k).F.cols();
        block.block(at, at, qk, qk) += alpha(k) * problem.shape_inverse(k);
        at += qk;
    }
    if (min_eigenvalue(0.5 * (block + block.transpose())) < -tol) {
        return false;
    }

    Matrix slack = Rsym;
    for (int k = 0; k < problem.size(); ++k) {
        slack -= alpha(k) * problem.right_gram(k);
    }
    return min_eigenvalue(0.5 * (slack + slack.transpose())) >= -tol;
}

bool certify_dominance(const SumProblem& problem, const AlphaVector& alpha, const Matrix& Q,
                       const Matrix& R, double tol) {
    const BoundingEllipsoid member = bounding_ellipsoid(problem, alpha);
    if (Q.rows() != member.Q.rows() || R.rows() != member.R.rows()) {
        throw InvalidInput("certify_dominance: Q/R dimensions do not match the problem");
    }
    const Matrix dQ = symmetrized(Q, "Q") - member.Q;
    const Matrix dR = symmetrized(R, "R") - member.R;
    return min_eigenvalue(dQ) >= -tol && min_eigenvalue(dR) >= -tol;
}

} // namespace ellsum
