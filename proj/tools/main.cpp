// Command-line front end: generate benchmark problems, solve problem
// files with any of the three methods, run timing sweeps, and spot-check
// containment by sampling.

#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellsum/bench.hpp"
#include "ellsum/generate.hpp"
#include "ellsum/serialize.hpp"
#include "ellsum/verify.hpp"

namespace {

using namespace ellsum;

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot write '" + path + "'");
    }
    out << text;
}

struct SolveArgs {
    std::string input;
    std::string method = "mm";
    double eps = 1e-8;
    int max_iters = 10'000;
    std::string init = "trace";
    std::uint64_t seed = 0;
    double lambda_floor = 1e-12;
    int check_containment = 0;
    std::string output;
};

int run_solve(const SolveArgs& args) {
    const SumProblem original = load_problem(args.input);
    const PreprocessedProblem prep = preprocess(original);
    const SumProblem& problem = prep.problem;

    const Method method = method_from_name(args.method);
    nlohmann::json out;
    bool degenerate = false;
    AlphaVector alpha(Vector::Ones(problem.size()));
    if (method == Method::Trace) {
        auto [trace_alpha, bounding] = solve_trace(problem);
        alpha = std::move(trace_alpha);
        out = solution_to_json("trace", problem, bounding, nullptr);
    } else {
        SolverConfig config;
        config.epsilon = args.eps;
        config.max_iters = args.max_iters;
        config.init = args.init == "random" ? InitMode::Random : InitMode::TraceOptimal;
        config.seed = args.seed;
        config.lambda_floor = args.lambda_floor;
        const OptimizerReport report =
            method == Method::MM ? solve_mm(problem, config) : solve_projgrad(problem, config);
        degenerate = report.termination == Termination::Degenerate;
        alpha = report.alpha_final;
        const BoundingEllipsoid bounding = bounding_ellipsoid(problem, alpha);
        out = solution_to_json(method_name(method), problem, bounding, &report);
    }

    out["reduction"]["applied"] = prep.changed;
    if (prep.changed) {
        out["reduction"]["left_factor"] = matrix_to_json(prep.left_factor);
        out["reduction"]["right_factor"] = matrix_to_json(prep.right_factor);
    }
    if (args.check_containment > 0) {
        std::mt19937_64 rng(args.seed);
        const BoundingEllipsoid bounding = bounding_ellipsoid(problem, alpha);
        out["containment"] = containment_to_json(verify_containment(
            problem, bounding, args.check_containment, SampleMode::Boundary, 1e-8, rng));
    }
    emit(out.dump(2) + "\n", args.output);
    return degenerate ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tight single-ellipsoid outer approximation of Minkowski sums of matrix "
                 "ellipsoids"};
    app.require_subcommand(1);

    // generate
    Index gen_q = 5, gen_r = 1;
    int gen_K = 10;
    std::uint64_t gen_seed = 0;
    double gen_noise = 0.1;
    std::string gen_output;
    auto* gen = app.add_subcommand("generate", "Write a random benchmark problem file");
    gen->add_option("--q", gen_q, "Left dimension");
    gen->add_option("--r", gen_r, "Right dimension (r >= 2 draws matrix-valued R_k)");
    gen->add_option("--K", gen_K, "Number of summands");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--noise-floor", gen_noise, "Diagonal shift added to each random gram");
    gen->add_option("-o,--output", gen_output, "Output path (default stdout)");

    // solve
    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve a problem file and print the bounding "
                                              "ellipsoid as JSON");
    solve->add_option("input", solve_args.input, "Problem file")->required();
    solve->add_option("--method", solve_args.method, "trace | mm | projgrad")
        ->check(CLI::IsMember({"trace", "mm", "projgrad"}));
    solve->add_option("--eps", solve_args.eps, "Convergence tolerance on |delta f|");
    solve->add_option("--max-iters", solve_args.max_iters, "Iteration cap");
    solve->add_option("--init", solve_args.init, "trace | random")
        ->check(CLI::IsMember({"trace", "random"}));
    solve->add_option("--seed", solve_args.seed, "Seed for random init / containment check");
    solve->add_option("--lambda-floor", solve_args.lambda_floor, "Degeneracy pivot floor");
    solve->add_option("--check-containment", solve_args.check_containment,
                      "Sample N boundary sum points and report membership margins");
    solve->add_option("-o,--output", solve_args.output, "Output path (default stdout)");

    // bench
    BenchConfig bench_config;
    std::vector<std::string> bench_methods = {"mm", "projgrad"};
    std::string bench_format = "csv";
    std::string bench_output;
    auto* bench = app.add_subcommand("bench", "Timing sweep over K");
    bench->add_option("--q", bench_config.q, "Left dimension");
    bench->add_option("--r", bench_config.r, "Right dimension");
    bench->add_option("--K", bench_config.K_list, "Comma-separated K values")->delimiter(',');
    bench->add_option("--method", bench_methods, "Comma-separated methods")->delimiter(',');
    bench->add_option("--trials", bench_config.trials, "Trials per (method, K)");
    bench->add_option("--seed", bench_config.seed, "Master seed");
    bench->add_option("--eps", bench_config.epsilon, "Matched |delta f| tolerance");
    bench->add_option("--max-iters", bench_config.max_iters, "Iteration cap");
    bench->add_option("--noise-floor", bench_config.noise_floor, "Problem generation shift");
    bench->add_option("--out", bench_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("-o,--output", bench_output, "Output path (default stdout)");

    // verify
    std::string verify_input, verify_method = "trace", verify_output;
    int verify_samples = 1000;
    std::uint64_t verify_seed = 0;
    double verify_tol = 1e-8, verify_eps = 1e-8;
    int verify_max_iters = 10'000;
    auto* verify = app.add_subcommand("verify", "Sample the Minkowski sum and check containment");
    verify->add_option("input", verify_input, "Problem file")->required();
    verify->add_option("--method", verify_method, "trace | mm | projgrad")
        ->check(CLI::IsMember({"trace", "mm", "projgrad"}));
    verify->add_option("--samples", verify_samples, "Boundary samples to draw");
    verify->add_option("--seed", verify_seed, "RNG seed");
    verify->add_option("--tol", verify_tol, "Violation tolerance on the membership margin");
    verify->add_option("--eps", verify_eps, "Solver tolerance");
    verify->add_option("--max-iters", verify_max_iters, "Solver iteration cap");
    verify->add_option("-o,--output", verify_output, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const SumProblem problem =
                generate_problem(gen_q, gen_K, gen_seed, gen_noise, gen_r);
            emit(problem_to_json(problem).dump(2) + "\n", gen_output);
            return 0;
        }
        if (solve->parsed()) {
            return run_solve(solve_args);
        }
        if (bench->parsed()) {
            bench_config.methods.clear();
            for (const std::string& m : bench_methods) {
                bench_config.methods.push_back(method_from_name(m));
            }
            const std::vector<BenchResult> results = run_benchmark(bench_config);
            if (bench_format == "csv") {
                std::ostringstream csv;
                write_csv(csv, results);
                emit(csv.str(), bench_output);
            } else {
                emit(bench_to_json(results).dump(2) + "\n", bench_output);
            }
            return 0;
        }
        if (verify->parsed()) {
            const PreprocessedProblem prep = preprocess(load_problem(verify_input));
            const SumProblem& problem = prep.problem;
            const Method method = method_from_name(verify_method);
            AlphaVector alpha = solve_trace(problem).first;
            bool degenerate = false;
            if (method != Method::Trace) {
                SolverConfig config;
                config.epsilon = verify_eps;
                config.max_iters = verify_max_iters;
                const OptimizerReport report = method == Method::MM
                                                   ? solve_mm(problem, config)
                                                   : solve_projgrad(problem, config);
                degenerate = report.termination == Termination::Degenerate;
                alpha = report.alpha_final;
            }
            const BoundingEllipsoid bounding = bounding_ellipsoid(problem, alpha);
            std::mt19937_64 rng(verify_seed);
            const ContainmentReport report = verify_containment(
                problem, bounding, verify_samples, SampleMode::Boundary, verify_tol, rng);
            nlohmann::json out = containment_to_json(report);
            out["method"] = method_name(method);
            emit(out.dump(2) + "\n", verify_output);
            return degenerate ? 1 : 0;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateFamily& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const AssumptionViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
