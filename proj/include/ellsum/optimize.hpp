#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ellsum/family.hpp"

namespace ellsum {

enum class InitMode { TraceOptimal, Random, UserSupplied };

enum class Termination { Converged, MaxIters, Degenerate };

/// Shared settings for the iterative solvers.
struct SolverConfig {
    /// Stop when |f(t) - f(t-1)| < epsilon. The projected-gradient solver
    /// additionally uses epsilon for its projected-gradient norm test.
    double epsilon = 1e-8;
    int max_iters = 10'000;
    InitMode init = InitMode::TraceOptimal;
    /// Starting weights for InitMode::UserSupplied (normalized internally).
    std::optional<Vector> alpha0;
    /// Abort as degenerate when a squared Cholesky pivot of Q(alpha) or
    /// R(alpha) falls below this floor.
    double lambda_floor = 1e-12;
    /// Seed for InitMode::Random (entries uniform on [0.1, 1], normalized).
    std::uint64_t seed = 0;
    /// Interpret epsilon relative to max(1, |f|) instead of absolutely.
    bool relative_epsilon = false;
    /// Make the projected-gradient solver also stop on |delta f| < epsilon,
    /// so both solvers can be timed against the same criterion.
    bool stop_on_objective = false;
};

struct OptimizerReport {
    AlphaVector alpha_final;
    /// f at the initial point and after every accepted update; for the MM
    /// solver this sequence never increases.
    std::vector<double> objective_trace;
    double grad_norm_final = 0.0; // infinity norm
    int iterations = 0;
    std::vector<double> iteration_times; // seconds per update
    double total_time = 0.0;
    Termination termination = Termination::Converged;
};

/// Separable upper bound on the log-det objective around an expansion
/// point: g(alpha) = sum_k (linear_k alpha_k + inverse_k / alpha_k) + offset,
/// tight at the expansion point.
struct SurrogateCoeffs {
    Vector linear;  // q * tr(R(a)^{-1} G_k^T R_k G_k)
    Vector inverse; // r * tr(Q(a)^{-1} F_k Q_k F_k^T)
    double offset;  // f(a) - 2 q r
};

double surrogate_value(const SurrogateCoeffs& coeffs, const Vector& alpha);

/// Exact minimizer of tr(R(alpha)) tr(Q(alpha)) over the normalized
/// weights, by Lagrange multipliers:
///
///   alpha_k = r sqrt(u_k / w_k) / sum_l sqrt(u_l w_l),
///   u_k = tr(F_k Q_k F_k^T), w_k = tr(G_k^T R_k G_k).
///
/// Requires a preprocessed problem (full-rank stacks).
std::pair<AlphaVector, BoundingEllipsoid> solve_trace(const SumProblem& problem);

/// Sum of squared semi-axes at alpha: tr(Q(alpha)) * tr(R(alpha)),
/// accumulated from cached traces in O(K).
double objective_trace_criterion(const SumProblem& problem, const AlphaVector& alpha);

/// q logdet R(alpha) + r logdet Q(alpha). Throws DegenerateFamily when a
/// shape matrix fails Cholesky.
double objective_logdet(const SumProblem& problem, const AlphaVector& alpha);

/// d f / d alpha_k = q tr(R(alpha)^{-1} G_k^T R_k G_k)
///                   - (r / alpha_k^2) tr(Q(alpha)^{-1} F_k Q_k F_k^T).
Vector gradient_logdet(const SumProblem& problem, const AlphaVector& alpha);

SurrogateCoeffs surrogate_coeffs(const SumProblem& problem, const AlphaVector& alpha_t);

/// One majorize-minimize update: minimize the surrogate in closed form
/// (alpha_k = sqrt(inverse_k / linear_k)) and rescale onto the normalized
/// slice. Never increases the log-det objective.
AlphaVector mm_step(const SumProblem& problem, const AlphaVector& alpha_t);

/// Iterates mm_step until |delta f| < epsilon or max_iters. A degenerate
/// evaluation ends the run at the last safe iterate instead of throwing.
OptimizerReport solve_mm(const SumProblem& problem, const SolverConfig& config = {});

/// Baseline: projected gradient descent on the log-det objective over the
/// normalized slice, with Armijo backtracking (halving, initial step 1).
/// Stops when the projected-gradient infinity norm drops below epsilon
/// (or on |delta f| as well, if stop_on_objective is set).
OptimizerReport solve_projgrad(const SumProblem& problem, const SolverConfig& config = {});

} // namespace ellsum
