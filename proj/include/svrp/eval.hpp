#pragma once

#include "svrp/core.hpp"
#include "svrp/solvers.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace svrp::eval {

struct RealizationResult {
    std::size_t realization_index = 0;
    double total_cost = 0.0;  // minutes, travel only
    int violations = 0;       // distinct customers violating a constraint
    int late_customers = 0;
    int over_capacity_customers = 0;
    bool feasible = true;
    std::vector<std::vector<double>> leg_times;  // per route
};

// Seed of realization r of an instance within an evaluation run. Shared by
// every solver so that solutions face the same realized conditions.
std::uint64_t realization_seed(std::uint64_t run_seed,
                               std::uint64_t instance_seed,
                               std::size_t realization);

// Stream used for the leg from node `from` to node `to`.
RandomStream leg_stream(std::uint64_t realization_seed,
                        std::size_t from,
                        std::size_t to);

// Simulates every route from instance.start_time with sampled leg times.
// Early arrivals wait for the window to open; arrivals after the window end
// are violations, as is every customer on an over-capacity route.
RealizationResult realize_cost(Solution const &solution,
                               Instance const &instance,
                               std::uint64_t realization_seed,
                               std::size_t realization_index = 0);

// Mean over realizations of violations / customers * 100.
double cvr(std::span<RealizationResult const> results, std::size_t customers);

// Feasible iff every realization has no violation.
bool instance_feasible(std::span<RealizationResult const> results);

// Fraction of instances that are feasible. Throws std::invalid_argument on
// an empty set.
double feasibility_rate(std::span<std::vector<RealizationResult> const> per_instance);
double feasibility_rate(std::span<bool const> feasible);

// Population variance (divides by N). Throws std::invalid_argument for N = 0.
double robustness(std::span<double const> costs);

double mean(std::span<double const> values);

// One solver applied to one instance and evaluated over realizations.
struct RunRecord {
    std::string solver;
    std::string instance_id;
    int size = 0;
    ProblemType problem_type = ProblemType::CVRP;
    DepotConfig depot_config = DepotConfig::Single;
    std::size_t customers = 0;
    double runtime_s = 0.0;
    double planned_cost = 0.0;
    bool failed = false;
    std::string diagnostic;
    std::vector<RealizationResult> realizations;

    std::vector<double> costs() const;
    double tc_mean() const;
    double cvr_percent() const;
    bool feasible() const;
    double robustness() const;
};

struct MetricsReport {
    std::string solver_name;
    int size = 0;
    ProblemType problem_type = ProblemType::CVRP;
    DepotConfig depot_config = DepotConfig::Single;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double total_cost = 0.0;    // mean TC over solved instances
    double cvr_percent = 0.0;   // mean over instances; failures count 100
    double feasibility = 0.0;   // FR; failures count infeasible
    double runtime_s = 0.0;     // mean planning time
    double robustness = 0.0;    // mean per-instance variance
};

struct BenchmarkReport {
    std::size_t realizations = 5;
    std::uint64_t seed = 0;
    std::vector<MetricsReport> rows;
    std::vector<RunRecord> runs;
};

struct BenchmarkOptions {
    std::size_t realizations = 5;
    std::uint64_t seed = 0;
    std::size_t threads = 0;  // 0: SVRP_THREADS or hardware concurrency
    bool keep_leg_times = false;
};

// Worker count: explicit request, else SVRP_THREADS, else hardware.
std::size_t resolve_threads(std::size_t requested);

// Evaluates an already planned solution.
RunRecord evaluate_solution(Solution const &solution,
                            Instance const &instance,
                            BenchmarkOptions const &options);

// Groups runs by (solver, size, problem type, depot config) in order of
// first appearance of the solver, then by key.
std::vector<MetricsReport> aggregate(std::span<RunRecord const> runs);

// Plans once per (solver, instance), timing only the solver call, then
// evaluates over the configured realizations. Solver exceptions become
// failed runs.
BenchmarkReport run_benchmark(std::span<solvers::Solver const *const> solvers,
                              std::span<Instance const> instances,
                              BenchmarkOptions const &options);

// Matches solutions to instances by id and evaluates them.
BenchmarkReport evaluate_solutions(std::span<Instance const> instances,
                                   std::span<Solution const> solutions,
                                   std::span<std::string const> solution_instance_ids,
                                   BenchmarkOptions const &options);

}  // namespace svrp::eval
