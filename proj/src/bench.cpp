#include "ellsum/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "ellsum/generate.hpp"

namespace ellsum {

namespace {

using Clock = std::chrono::steady_clock;

// splitmix64-style mixing so every (seed, K, trial) gets an independent
// stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k, std::uint64_t trial) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1) + 0xbf58476d1ce4e5b9ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vector random_start(int K, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    Vector b(K);
    for (int k = 0; k < K; ++k) {
        b(k) = unif(rng);
    }
    return b;
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::Trace:
        return "trace";
    case Method::MM:
        return "mm";
    case Method::ProjGrad:
        return "projgrad";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "trace") {
        return Method::Trace;
    }
    if (name == "mm") {
        return Method::MM;
    }
    if (name == "projgrad") {
        return Method::ProjGrad;
    }
    throw InvalidInput("unknown method '" + name + "' (expected trace, mm, or projgrad)");
}

double BenchResult::mean_time() const {
    double sum = 0.0;
    int n = 0;
    for (const TrialResult& t : trials) {
        if (!t.degenerate) {
            sum += t.time_s;
            ++n;
        }
    }
    return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

double BenchResult::min_time() const {
    double best = std::numeric_limits<double>::infinity();
    for (const TrialResult& t : trials) {
        if (!t.degenerate) {
            best = std::min(best, t.time_s);
        }
    }
    return std::isfinite(best) ? best : std::numeric_limits<double>::quiet_NaN();
}

double BenchResult::max_time() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const TrialResult& t : trials) {
        if (!t.degenerate) {
            worst = std::max(worst, t.time_s);
        }
    }
    return std::isfinite(worst) ? worst : std::numeric_limits<double>::quiet_NaN();
}

int BenchResult::degenerate_count() const {
    return static_cast<int>(
        std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return t.degenerate; }));
}

std::vector<BenchResult> run_benchmark(const BenchConfig& config) {
    if (config.trials < 1) {
        throw InvalidInput("run_benchmark: trials must be at least 1");
    }
    std::vector<BenchResult> results;
    for (Method method : config.methods) {
        for (int K : config.K_list) {
            BenchResult cell;
            cell.method = method;
            cell.K = K;
            cell.q = config.q;
            cell.r = config.r;
            cell.seed = config.seed;
            for (int trial = 0; trial < config.trials; ++trial) {
                const std::uint64_t s = mix_seed(config.seed, static_cast<std::uint64_t>(K),
                                                 static_cast<std::uint64_t>(trial));
                const SumProblem problem =
                    generate_problem(config.q, K, s, config.noise_floor, config.r);

                TrialResult t;
                t.trial = trial;
                if (method == Method::Trace) {
                    const auto tic = Clock::now();
                    const auto [alpha, bounding] = solve_trace(problem);
                    t.time_s = std::chrono::duration<double>(Clock::now() - tic).count();
                    t.iters = 0;
                    t.f_final = size_logdet(bounding.Q, bounding.R);
                } else {
                    SolverConfig solver;
                    solver.epsilon = config.epsilon;
                    solver.max_iters = config.max_iters;
                    solver.init = InitMode::UserSupplied;
                    solver.alpha0 = random_start(K, s + 1);
                    solver.stop_on_objective = true; // matched |delta f| stopping
                    const auto tic = Clock::now();
                    const OptimizerReport report = method == Method::MM
                                                       ? solve_mm(problem, solver)
                                                       : solve_projgrad(problem, solver);
                    t.time_s = std::chrono::duration<double>(Clock::now() - tic).count();
                    t.iters = report.iterations;
                    t.degenerate = report.termination == Termination::Degenerate;
                    t.f_final = t.degenerate ? std::numeric_limits<double>::quiet_NaN()
                                             : report.objective_trace.back();
                }
                cell.trials.push_back(t);
            }
            results.push_back(std::move(cell));
        }
    }
    return results;
}

void write_csv(std::ostream& out, const std::vector<BenchResult>& results) {
    out << "method,K,q,r,trial,time_s,iters,f_final\n";
    char buf[64];
    for (const BenchResult& cell : results) {
        for (const TrialResult& t : cell.trials) {
            out << method_name(cell.method) << ',' << cell.K << ',' << cell.q << ',' << cell.r
                << ',' << t.trial << ',';
            std::snprintf(buf, sizeof(buf), "%.9e", t.time_s);
            out << buf << ',' << t.iters << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", t.f_final);
            out << buf << '\n';
        }
    }
}

nlohmann::json bench_to_json(const std::vector<BenchResult>& results) {
    nlohmann::json cells = nlohmann::json::array();
    for (const BenchResult& cell : results) {
        nlohmann::json trials = nlohmann::json::array();
        for (const TrialResult& t : cell.trials) {
            trials.push_back({{"trial", t.trial},
                              {"time_s", t.time_s},
                              {"iters", t.iters},
                              {"f_final", t.f_final},
                              {"status", t.degenerate ? "degenerate" : "ok"}});
        }
        cells.push_back({{"method", method_name(cell.method)},
                         {"K", cell.K},
                         {"q", cell.q},
                         {"r", cell.r},
                         {"seed", cell.seed},
                         {"trials", cell.trials.size()},
                         {"time_s", {{"mean", cell.mean_time()},
                                     {"min", cell.min_time()},
                                     {"max", cell.max_time()}}},
                         {"degenerate_trials", cell.degenerate_count()},
                         {"results", std::move(trials)}});
    }
    return {{"results", std::move(cells)}};
}

} // namespace ellsum
