#pragma once

#include <string>

#include <json.hpp>

#include "ellsum/optimize.hpp"
#include "ellsum/verify.hpp"

namespace ellsum {

inline constexpr int kProblemSchemaVersion = 1;

/// Matrices serialize as row-major nested arrays of decimal floats.
nlohmann::json matrix_to_json(const Matrix& M);

/// Parses a nested-array matrix; `where` names the field in error
/// messages. Expected dimensions of -1 mean "any".
Matrix matrix_from_json(const nlohmann::json& j, const std::string& where, Index rows = -1,
                        Index cols = -1);

nlohmann::json problem_to_json(const SumProblem& problem);
SumProblem problem_from_json(const nlohmann::json& j);

SumProblem load_problem(const std::string& path);
void save_problem(const SumProblem& problem, const std::string& path);

const char* termination_name(Termination t);

/// Solver output for one problem: weights, bounding shapes, both size
/// criteria, and iteration metadata.
nlohmann::json solution_to_json(const std::string& method, const SumProblem& problem,
                                const BoundingEllipsoid& bounding, const OptimizerReport* report);

nlohmann::json containment_to_json(const ContainmentReport& report);

} // namespace ellsum
