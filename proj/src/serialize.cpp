#include "ellsum/serialize.hpp"

#include <fstream>

namespace ellsum {

using nlohmann::json;

json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < M.cols(); ++j) {
            row.push_back(M(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where, Index rows, Index cols) {
    if (!j.is_array() || j.empty()) {
        throw InvalidInput(where + ": expected a non-empty array of rows");
    }
    const Index m = static_cast<Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) {
        throw InvalidInput(where + ": rows must be non-empty arrays");
    }
    const Index n = static_cast<Index>(j[0].size());
    Matrix M(m, n);
    for (Index i = 0; i < m; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw InvalidInput(where + ": row " + std::to_string(i) + " has wrong length");
        }
        for (Index k = 0; k < n; ++k) {
            const json& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) {
                throw InvalidInput(where + ": entry (" + std::to_string(i) + "," +
                                   std::to_string(k) + ") is not a number");
            }
            M(i, k) = v.get<double>();
        }
    }
    if ((rows >= 0 && M.rows() != rows) || (cols >= 0 && M.cols() != cols)) {
        throw InvalidInput(where + ": expected " + std::to_string(rows) + "x" +
                           std::to_string(cols) + ", got " + std::to_string(M.rows()) + "x" +
                           std::to_string(M.cols()));
    }
    return M;
}

json problem_to_json(const SumProblem& problem) {
    json terms = json::array();
    for (const SumTerm& t : problem.terms()) {
        json term = {{"F", matrix_to_json(t.F)},
                     {"C", matrix_to_json(t.ellipsoid.center())},
                     {"Q", matrix_to_json(t.ellipsoid.Q())},
                     {"R", matrix_to_json(t.ellipsoid.R())},
                     {"G", matrix_to_json(t.G)}};
        if (!t.label.empty()) {
            term["label"] = t.label;
        }
        terms.push_back(std::move(term));
    }
    return {{"schema_version", kProblemSchemaVersion},
            {"K", problem.size()},
            {"terms", std::move(terms)}};
}

SumProblem problem_from_json(const json& j) {
    if (!j.is_object()) {
        throw InvalidInput("problem: expected a JSON object");
    }
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
        throw InvalidInput("problem: field 'terms' must be a non-empty array");
    }
    if (j.contains("schema_version") && j["schema_version"] != kProblemSchemaVersion) {
        throw InvalidInput("problem: unsupported schema_version");
    }
    std::vector<SumTerm> terms;
    std::size_t index = 0;
    for (const json& term : j["terms"]) {
        const std::string where = "term " + std::to_string(index);
        for (const char* field : {"F", "C", "Q", "R", "G"}) {
            if (!term.contains(field)) {
                throw InvalidInput(where + ": missing field '" + field + "'");
            }
        }
        Matrix F = matrix_from_json(term["F"], where + ": field 'F'");
        Matrix C = matrix_from_json(term["C"], where + ": field 'C'");
        Matrix Q = matrix_from_json(term["Q"], where + ": field 'Q'");
        Matrix R = matrix_from_json(term["R"], where + ": field 'R'");
        Matrix G = matrix_from_json(term["G"], where + ": field 'G'");
        std::string label = term.value("label", std::string{});
        try {
            terms.push_back(
                {std::move(F), MatrixEllipsoid(std::move(C), std::move(Q), std::move(R)),
                 std::move(G), std::move(label)});
        } catch (const std::exception& e) {
            throw InvalidInput(where + ": " + e.what());
        }
        ++index;
    }
    if (j.contains("K") && j["K"].is_number_integer() &&
        j["K"].get<int>() != static_cast<int>(terms.size())) {
        throw InvalidInput("problem: field 'K' disagrees with the number of terms");
    }
    return SumProblem(std::move(terms));
}

SumProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidInput("'" + path + "': " + e.what());
    }
    return problem_from_json(j);
}

void save_problem(const SumProblem& problem, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot write '" + path + "'");
    }
    out << problem_to_json(problem).dump(2) << "\n";
}

const char* termination_name(Termination t) {
    switch (t) {
    case Termination::Converged:
        return "converged";
    case Termination::MaxIters:
        return "max_iters";
    case Termination::Degenerate:
        return "degenerate";
    }
    return "unknown";
}

json solution_to_json(const std::string& method, const SumProblem& problem,
                      const BoundingEllipsoid& bounding, const OptimizerReport* report) {
    json out = {{"method", method},
                {"q", problem.q()},
                {"r", problem.r()},
                {"K", problem.size()},
                {"alpha", std::vector<double>(bounding.alpha.values().begin(),
                                              bounding.alpha.values().end())},
                {"center", matrix_to_json(bounding.center)},
                {"Q", matrix_to_json(bounding.Q)},
                {"R", matrix_to_json(bounding.R)},
                {"objective",
                 {{"trace", size_trace(bounding.Q, bounding.R)},
                  {"logdet", size_logdet(bounding.Q, bounding.R)}}}};
    if (report != nullptr) {
        out["iterations"] = report->iterations;
        out["termination"] = termination_name(report->termination);
        out["grad_norm_final"] = report->grad_norm_final;
        out["objective_trace"] = report->objective_trace;
        out["total_time_s"] = report->total_time;
    } else {
        out["iterations"] = 0;
        out["termination"] = "closed_form";
    }
    return out;
}

json containment_to_json(const ContainmentReport& report) {
    return {{"samples", report.samples_tested},
            {"violations", report.violations},
            {"worst_margin", report.worst_margin},
            {"tol", report.tol}};
}

} // namespace ellsum
