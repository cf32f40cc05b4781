#include "ellsum/optimize.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace ellsum {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct FamilyEval {
    Matrix Q, R;
    Eigen::LLT<Matrix> Qllt, Rllt;
    double f = 0.0;
};

double squared_min_pivot(const Eigen::LLT<Matrix>& llt) {
    const double d = llt.matrixLLT().diagonal().minCoeff();
    return d * d;
}

FamilyEval eval_family(const SumProblem& problem, const Vector& alpha, double pivot_floor) {
    if (alpha.size() != problem.size()) {
        throw InvalidInput("family evaluation: alpha has " + std::to_string(alpha.size()) +
                           " entries for " + std::to_string(problem.size()) + " terms");
    }
    FamilyEval st;
    st.Q = Matrix::Zero(problem.q(), problem.q());
    st.R = Matrix::Zero(problem.r(), problem.r());
    for (int k = 0; k < problem.size(); ++k) {
        st.Q += problem.left_gram(k) / alpha(k);
        st.R += alpha(k) * problem.right_gram(k);
    }
    if (!st.Q.allFinite() || !st.R.allFinite()) {
        throw DegenerateFamily("family evaluation: non-finite shape matrix");
    }
    st.Qllt.compute(st.Q);
    st.Rllt.compute(st.R);
    if (st.Qllt.info() != Eigen::Success || st.Rllt.info() != Eigen::Success) {
        throw DegenerateFamily("family evaluation: Cholesky factorization failed");
    }
    if (squared_min_pivot(st.Qllt) < pivot_floor || squared_min_pivot(st.Rllt) < pivot_floor) {
        throw DegenerateFamily("family evaluation: Cholesky pivot below the eigenvalue floor");
    }
    st.f = static_cast<double>(problem.q()) * logdet(st.Rllt) +
           static_cast<double>(problem.r()) * logdet(st.Qllt);
    return st;
}

// Surrogate coefficients at the evaluated point. One Cholesky-solved
// inverse per side, then a Frobenius inner product per term, keeping the
// accumulation linear in K.
void coeffs_from_eval(const SumProblem& problem, const FamilyEval& st, Vector& linear,
                      Vector& inverse) {
    const Matrix Rinv = spd_inverse(st.Rllt);
    const Matrix Qinv = spd_inverse(st.Qllt);
    const double q = static_cast<double>(problem.q());
    const double r = static_cast<double>(problem.r());
    linear.resize(problem.size());
    inverse.resize(problem.size());
    for (int k = 0; k < problem.size(); ++k) {
        linear(k) = q * Rinv.cwiseProduct(problem.right_gram(k)).sum();
        inverse(k) = r * Qinv.cwiseProduct(problem.left_gram(k)).sum();
    }
}

Vector gradient_from_coeffs(const Vector& linear, const Vector& inverse, const Vector& alpha) {
    return linear - (inverse.array() / alpha.array().square()).matrix();
}

void validate_config(const SolverConfig& config) {
    if (!(config.epsilon > 0.0)) {
        throw InvalidInput("SolverConfig: epsilon must be positive");
    }
    if (config.max_iters < 1) {
        throw InvalidInput("SolverConfig: max_iters must be at least 1");
    }
    if (config.lambda_floor < 0.0) {
        throw InvalidInput("SolverConfig: lambda_floor must be nonnegative");
    }
}

double stop_threshold(const SolverConfig& config, double f_prev) {
    return config.relative_epsilon ? config.epsilon * std::max(1.0, std::abs(f_prev))
                                   : config.epsilon;
}

AlphaVector initial_alpha(const SumProblem& problem, const SolverConfig& config) {
    switch (config.init) {
    case InitMode::TraceOptimal:
        return solve_trace(problem).first;
    case InitMode::Random: {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> unif(0.1, 1.0);
        Vector b(problem.size());
        for (Index k = 0; k < b.size(); ++k) {
            b(k) = unif(rng);
        }
        return normalize(problem, AlphaVector(std::move(b)));
    }
    case InitMode::UserSupplied:
        if (!config.alpha0) {
            throw InvalidInput("SolverConfig: InitMode::UserSupplied requires alpha0");
        }
        return normalize(problem, AlphaVector(*config.alpha0));
    }
    throw InvalidInput("SolverConfig: unknown init mode");
}

} // namespace

double surrogate_value(const SurrogateCoeffs& coeffs, const Vector& alpha) {
    return (coeffs.linear.array() * alpha.array() + coeffs.inverse.array() / alpha.array()).sum() +
           coeffs.offset;
}

std::pair<AlphaVector, BoundingEllipsoid> solve_trace(const SumProblem& problem) {
    const double r = static_cast<double>(problem.r());
    double denom = 0.0;
    for (int k = 0; k < problem.size(); ++k) {
        denom += std::sqrt(problem.left_gram_trace(k) * problem.right_gram_trace(k));
    }
    Vector a(problem.size());
    for (int k = 0; k < problem.size(); ++k) {
        a(k) = r * std::sqrt(problem.left_gram_trace(k) / problem.right_gram_trace(k)) / denom;
    }
    AlphaVector alpha(std::move(a), true);
    BoundingEllipsoid member = bounding_ellipsoid(problem, alpha);
    return {std::move(alpha), std::move(member)};
}

double objective_trace_criterion(const SumProblem& problem, const AlphaVector& alpha) {
    if (alpha.size() != problem.size()) {
        throw InvalidInput("objective_trace_criterion: alpha size does not match the problem");
    }
    double trace_Q = 0.0, trace_R = 0.0;
    for (int k = 0; k < problem.size(); ++k) {
        trace_Q += problem.left_gram_trace(k) / alpha[k];
        trace_R += alpha[k] * problem.right_gram_trace(k);
    }
    return trace_Q * trace_R;
}

double objective_logdet(const SumProblem& problem, const AlphaVector& alpha) {
    return eval_family(problem, alpha.values(), 0.0).f;
}

Vector gradient_logdet(const SumProblem& problem, const AlphaVector& alpha) {
    const FamilyEval st = eval_family(problem, alpha.values(), 0.0);
    Vector linear, inverse;
    coeffs_from_eval(problem, st, linear, inverse);
    return gradient_from_coeffs(linear, inverse, alpha.values());
}

SurrogateCoeffs surrogate_coeffs(const SumProblem& problem, const AlphaVector& alpha_t) {
    const FamilyEval st = eval_family(problem, alpha_t.values(), 0.0);
    SurrogateCoeffs coeffs;
    coeffs_from_eval(problem, st, coeffs.linear, coeffs.inverse);
    coeffs.offset = st.f - 2.0 * static_cast<double>(problem.q() * problem.r());
    return coeffs;
}

AlphaVector mm_step(const SumProblem& problem, const AlphaVector& alpha_t) {
    const FamilyEval st = eval_family(problem, alpha_t.values(), 0.0);
    Vector linear, inverse;
    coeffs_from_eval(problem, st, linear, inverse);
    const Vector tilde = (inverse.array() / linear.array()).sqrt().matrix();
    return normalize(problem, AlphaVector(tilde));
}

OptimizerReport solve_mm(const SumProblem& problem, const SolverConfig& config) {
    validate_config(config);
    const auto t_start = Clock::now();
    Vector a = initial_alpha(problem, config).values();

    std::vector<double> trace;
    std::vector<double> times;
    Termination term = Termination::MaxIters;
    int iterations = 0;
    FamilyEval st;
    bool have_state = false;
    try {
        st = eval_family(problem, a, config.lambda_floor);
        have_state = true;
    } catch (const DegenerateFamily&) {
        term = Termination::Degenerate;
    }

    if (have_state) {
        trace.push_back(st.f);
        const double r = static_cast<double>(problem.r());
        Vector linear, inverse;
        for (int t = 1; t <= config.max_iters; ++t) {
            const auto tic = Clock::now();
            coeffs_from_eval(problem, st, linear, inverse);
            Vector next = (inverse.array() / linear.array()).sqrt().matrix();
            double trace_R = 0.0;
            for (int k = 0; k < problem.size(); ++k) {
                trace_R += next(k) * problem.right_gram_trace(k);
            }
            next *= r / trace_R;
            FamilyEval next_st;
            try {
                next_st = eval_family(problem, next, config.lambda_floor);
            } catch (const DegenerateFamily&) {
                term = Termination::Degenerate;
                break;
            }
            a = std::move(next);
            st = std::move(next_st);
            iterations = t;
            times.push_back(seconds_since(tic));
            trace.push_back(st.f);
            if (std::abs(trace[t] - trace[t - 1]) < stop_threshold(config, trace[t - 1])) {
                term = Termination::Converged;
                break;
            }
        }
    }

    double grad_norm = std::numeric_limits<double>::quiet_NaN();
    if (have_state) {
        Vector linear, inverse;
        coeffs_from_eval(problem, st, linear, inverse);
        grad_norm = gradient_from_coeffs(linear, inverse, a).lpNorm<Eigen::Infinity>();
    }
    return {AlphaVector(std::move(a), true),
            std::move(trace),
            grad_norm,
            iterations,
            std::move(times),
            seconds_since(t_start),
            term};
}

OptimizerReport solve_projgrad(const SumProblem& problem, const SolverConfig& config) {
    validate_config(config);
    const auto t_start = Clock::now();
    const double r = static_cast<double>(problem.r());
    Vector w(problem.size());
    for (int k = 0; k < problem.size(); ++k) {
        w(k) = problem.right_gram_trace(k);
    }
    const double w_sq = w.squaredNorm();

    Vector a = initial_alpha(problem, config).values();
    std::vector<double> trace;
    std::vector<double> times;
    Termination term = Termination::MaxIters;
    int iterations = 0;
    FamilyEval st;
    bool have_state = false;
    try {
        st = eval_family(problem, a, config.lambda_floor);
        have_state = true;
    } catch (const DegenerateFamily&) {
        term = Termination::Degenerate;
    }

    Vector linear, inverse;
    Vector grad;
    if (have_state) {
        trace.push_back(st.f);
        coeffs_from_eval(problem, st, linear, inverse);
        grad = gradient_from_coeffs(linear, inverse, a);

        for (int t = 1; t <= config.max_iters; ++t) {
            const auto tic = Clock::now();
            // Component of the gradient tangential to the slice w . a = r.
            const Vector gp = grad - (w.dot(grad) / w_sq) * w;
            if (gp.lpNorm<Eigen::Infinity>() < config.epsilon) {
                term = Termination::Converged;
                break;
            }
            const double dir_sq = gp.squaredNorm();
            double step = 1.0;
            bool accepted = false;
            Vector cand;
            while (step > 1e-18) {
                cand = a - step * gp;
                if (cand.minCoeff() > 0.0) {
                    try {
                        const FamilyEval probe = eval_family(problem, cand, config.lambda_floor);
                        if (probe.f <= st.f - 1e-4 * step * dir_sq) {
                            accepted = true;
                            break;
                        }
                    } catch (const DegenerateFamily&) {
                        // reject the step
                    }
                }
                step *= 0.5;
            }
            if (!accepted) {
                // No Armijo decrease at floating-point resolution: treat as
                // stationary.
                term = Termination::Converged;
                break;
            }
            cand *= r / w.dot(cand); // remove drift; leaves f unchanged
            FamilyEval next_st;
            try {
                next_st = eval_family(problem, cand, config.lambda_floor);
            } catch (const DegenerateFamily&) {
                term = Termination::Degenerate;
                break;
            }
            const double f_prev = st.f;
            a = std::move(cand);
            st = std::move(next_st);
            coeffs_from_eval(problem, st, linear, inverse);
            grad = gradient_from_coeffs(linear, inverse, a);
            iterations = t;
            times.push_back(seconds_since(tic));
            trace.push_back(st.f);
            if (config.stop_on_objective &&
                std::abs(st.f - f_prev) < stop_threshold(config, f_prev)) {
                term = Termination::Converged;
                break;
            }
            // Accepted decreases below the floating-point resolution of f
            // mean the line search is reacting to round-off.
            if (f_prev - st.f <=
                8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f_prev))) {
                term = Termination::Converged;
                break;
            }
        }
    }

    const double grad_norm = have_state ? grad.lpNorm<Eigen::Infinity>()
                                        : std::numeric_limits<double>::quiet_NaN();
    return {AlphaVector(std::move(a), true),
            std::move(trace),
            grad_norm,
            iterations,
            std::move(times),
            seconds_since(t_start),
            term};
}

} // namespace ellsum
