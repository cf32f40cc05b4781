#include "ellsum/generate.hpp"

#include <random>

namespace ellsum {

namespace {

Matrix noisy_gram(Index n, double noise_floor, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix N(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            N(i, j) = gauss(rng);
        }
    }
    return N * N.transpose() + noise_floor * Matrix::Identity(n, n);
}

} // namespace

SumProblem generate_problem(Index q, int K, std::uint64_t seed, double noise_floor, Index r) {
    if (q < 1 || r < 1 || K < 1) {
        throw InvalidInput("generate_problem: q, r, and K must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<SumTerm> terms;
    terms.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const Matrix Q = noisy_gram(q, noise_floor, rng);
        const Matrix R = (r == 1) ? Matrix::Ones(1, 1) : noisy_gram(r, noise_floor, rng);
        terms.push_back({Matrix::Identity(q, q),
                         MatrixEllipsoid(Matrix::Zero(q, r), Q, R),
                         Matrix::Identity(r, r),
                         {}});
    }
    return SumProblem(std::move(terms));
}

} // namespace ellsum
