#pragma once

#include <cstdint>

#include "ellsum/sum_problem.hpp"

namespace ellsum {

/// Random benchmark problem: K summands with F_k = I_q and
/// Q_k = N_k N_k^T + noise_floor * I_q, N_k standard normal. With r = 1
/// the right side is fixed to G_k = R_k = 1; with r >= 2 every R_k is
/// drawn the same way at dimension r and G_k = I_r. Centers are zero.
/// The same seed reproduces the problem exactly.
SumProblem generate_problem(Index q, int K, std::uint64_t seed, double noise_floor = 0.1,
                            Index r = 1);

} // namespace ellsum
