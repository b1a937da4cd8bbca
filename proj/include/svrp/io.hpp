#pragma once

#include "svrp/core.hpp"
#include "svrp/eval.hpp"
#include "svrp/generator.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace svrp::io {

inline constexpr int kFormatVersion = 1;

// Malformed document: bad JSON, wrong version, missing/unknown/mistyped
// field. The message names the offending field path.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical JSON: fixed field order, reals rounded to 9 significant digits.
std::string serialize_instance(Instance const &instance);

// Throws FormatError for schema problems and InvariantError when the
// decoded instance breaks a domain invariant.
Instance parse_instance(std::string_view text);

std::string serialize_solution(Solution const &solution,
                               std::string const &instance_id);

struct SolutionDocument {
    std::string instance_id;
    Solution solution;
};

SolutionDocument parse_solution(std::string_view text);

// Parses and checks the solution against its instance (ids, coverage,
// depots). Capacity excess is allowed: it is scored as violations.
SolutionDocument parse_solution(std::string_view text, Instance const &instance);

std::string serialize_report(eval::BenchmarkReport const &report);
eval::BenchmarkReport parse_report(std::string_view text);

// Fixed-width table with Method, Total Cost, CVR (%), Feasibility,
// Runtime (s) and Robustness columns per group.
std::string format_report_table(eval::BenchmarkReport const &report);

// Generator configuration document. Every field is optional except
// n_customers; "tier" applies a size-tier preset.
generator::GeneratorConfig parse_generator_config(std::string_view text);
std::string serialize_generator_config(generator::GeneratorConfig const &config);

// Lossy projection onto the CVRPLIB text format (coordinates, demands,
// capacity, depots). Windows and stochastic parameters are dropped.
std::string export_cvrplib(Instance const &instance);

std::string read_file(std::filesystem::path const &path);
void write_file(std::filesystem::path const &path, std::string_view content);

}  // namespace svrp::io
