#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "ellsum/optimize.hpp"

namespace ellsum {

enum class Method { Trace, MM, ProjGrad };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct TrialResult {
    int trial = 0;
    double time_s = 0.0; // solver call only
    int iters = 0;
    double f_final = 0.0; // log-det objective at the final weights
    bool degenerate = false;
};

/// Aggregated results for one (method, K) cell of a sweep.
struct BenchResult {
    Method method = Method::MM;
    int K = 0;
    Index q = 0;
    Index r = 0;
    std::uint64_t seed = 0;
    std::vector<TrialResult> trials;

    double mean_time() const; // over non-degenerate trials
    double min_time() const;
    double max_time() const;
    int degenerate_count() const;
};

struct BenchConfig {
    Index q = 5;
    Index r = 1;
    std::vector<int> K_list = {10, 20, 30, 40, 50};
    std::vector<Method> methods = {Method::MM, Method::ProjGrad};
    int trials = 20;
    std::uint64_t seed = 0;
    double epsilon = 1e-8;
    int max_iters = 100'000;
    double noise_floor = 0.1;
};

/// Runs every (method, K, trial) combination. Each trial generates one
/// problem and one random starting point, both derived deterministically
/// from (seed, K, trial) and shared by all methods so their final
/// objectives and times are directly comparable. Timing covers the solver
/// call only. MM and the projected-gradient baseline are stopped by the
/// same |delta f| < epsilon rule.
std::vector<BenchResult> run_benchmark(const BenchConfig& config);

/// Fixed header `method,K,q,r,trial,time_s,iters,f_final`, one row per
/// (method, K, trial). Degenerate trials carry f_final = nan.
void write_csv(std::ostream& out, const std::vector<BenchResult>& results);

nlohmann::json bench_to_json(const std::vector<BenchResult>& results);

} // namespace ellsum
