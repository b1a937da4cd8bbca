#include "svrp/eval.hpp"

#include "svrp/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace svrp::eval {

std::uint64_t realization_seed(std::uint64_t run_seed,
                               std::uint64_t instance_seed,
                               std::size_t realization)
{
    return derive_seed(run_seed, "realization", instance_seed, realization);
}

RandomStream leg_stream(std::uint64_t realization_seed,
                        std::size_t from,
                        std::size_t to)
{
    auto const edge = (static_cast<std::uint64_t>(from) << 32)
                      | static_cast<std::uint64_t>(to);
    return RandomStream(realization_seed, "travel", edge);
}

RealizationResult realize_cost(Solution const &solution,
                               Instance const &instance,
                               std::uint64_t realization_seed,
                               std::size_t realization_index)
{
    RealizationResult result;
    result.realization_index = realization_index;

    auto const n = instance.num_customers();
    std::vector<char> late(n + 1, 0);
    std::vector<char> over(n + 1, 0);

    for (auto const &route : solution.routes)
    {
        auto &legs = result.leg_times.emplace_back();
        if (route.customers.empty())
            continue;

        auto const over_capacity
            = route_load(route, instance) > instance.fleet.capacity;
        auto clock = instance.start_time;
        auto node = instance.depot_node(route.depot);

        auto travel = [&](std::size_t to) {
            auto rng = leg_stream(realization_seed, node, to);
            auto const sample = stochastic::travel_time(
                instance.node_location(node),
                instance.node_location(to),
                stochastic::minute_of_day(clock),
                instance.stochastic,
                rng);
            legs.push_back(sample.total);
            result.total_cost += sample.total;
            clock += sample.total;
            node = to;
        };

        for (int id : route.customers)
        {
            travel(instance.customer_node(id));
            auto const &customer = instance.customer(id);
            if (customer.has_window)
            {
                if (clock > customer.window.end())
                    late[id] = 1;
                clock = std::max(clock, customer.window.start);
            }
            if (over_capacity)
                over[id] = 1;
        }
        travel(instance.depot_node(route.depot));
    }

    for (std::size_t id = 1; id <= n; ++id)
    {
        result.late_customers += late[id];
        result.over_capacity_customers += over[id];
        if (late[id] || over[id])
            ++result.violations;
    }
    result.feasible = result.violations == 0;
    return result;
}

double cvr(std::span<RealizationResult const> results, std::size_t customers)
{
    if (results.empty() || customers == 0)
        return 0.0;
    double sum = 0.0;
    for (auto const &r : results)
        sum += 100.0 * r.violations / static_cast<double>(customers);
    return sum / static_cast<double>(results.size());
}

bool instance_feasible(std::span<RealizationResult const> results)
{
    return std::all_of(results.begin(), results.end(), [](auto const &r) {
        return r.violations == 0 && r.feasible;
    });
}

double feasibility_rate(std::span<std::vector<RealizationResult> const> per_instance)
{
    if (per_instance.empty())
        throw std::invalid_argument("feasibility_rate: no instances");
    auto const feasible = std::count_if(
        per_instance.begin(), per_instance.end(), [](auto const &results) {
            return instance_feasible(results);
        });
    return static_cast<double>(feasible)
           / static_cast<double>(per_instance.size());
}

double feasibility_rate(std::span<bool const> feasible)
{
    if (feasible.empty())
        throw std::invalid_argument("feasibility_rate: no instances");
    return static_cast<double>(std::count(feasible.begin(), feasible.end(), true))
           / static_cast<double>(feasible.size());
}

double mean(std::span<double const> values)
{
    if (values.empty())
        return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0)
           / static_cast<double>(values.size());
}

double robustness(std::span<double const> costs)
{
    if (costs.empty())
        throw std::invalid_argument("robustness: needs at least one sample");
    // Shifted two-pass form: identical samples give exactly zero.
    auto const shift = costs.front();
    double mean_offset = 0.0;
    for (double c : costs)
        mean_offset += c - shift;
    mean_offset /= static_cast<double>(costs.size());
    double sum = 0.0;
    for (double c : costs)
        sum += (c - shift - mean_offset) * (c - shift - mean_offset);
    return sum / static_cast<double>(costs.size());
}

std::vector<double> RunRecord::costs() const
{
    std::vector<double> values;
    for (auto const &r : realizations)
        values.push_back(r.total_cost);
    return values;
}

double RunRecord::tc_mean() const { return mean(costs()); }

double RunRecord::cvr_percent() const
{
    return failed ? 100.0 : cvr(realizations, customers);
}

bool RunRecord::feasible() const
{
    return !failed && instance_feasible(realizations);
}

double RunRecord::robustness() const
{
    auto const values = costs();
    return values.empty() ? 0.0 : eval::robustness(values);
}

std::size_t resolve_threads(std::size_t requested)
{
    if (requested > 0)
        return requested;
    if (auto const *env = std::getenv("SVRP_THREADS"))
    {
        char *end = nullptr;
        auto const value = std::strtol(env, &end, 10);
        if (end != env && value > 0)
            return static_cast<std::size_t>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

RunRecord blank_record(std::string solver, Instance const &instance)
{
    RunRecord record;
    record.solver = std::move(solver);
    record.instance_id = instance.id;
    record.size = static_cast<int>(instance.num_customers());
    record.problem_type = instance.problem_type;
    record.depot_config = instance.depot_config;
    record.customers = instance.num_customers();
    return record;
}

void fill_realizations(RunRecord &record,
                       Solution const &solution,
                       Instance const &instance,
                       BenchmarkOptions const &options)
{
    auto const valid = check_coverage(solution, instance);
    if (!valid.ok)
    {
        record.failed = true;
        record.diagnostic = "invalid solution: " + valid.reason;
        return;
    }
    if (solution.routes.size()
        > static_cast<std::size_t>(instance.fleet.num_vehicles))
    {
        record.failed = true;
        record.diagnostic = "invalid solution: more routes than vehicles";
        return;
    }
    for (auto const &route : solution.routes)
        if (route.depot >= instance.depots.size())
        {
            record.failed = true;
            record.diagnostic = "invalid solution: unknown depot index";
            return;
        }

    for (std::size_t r = 0; r != options.realizations; ++r)
    {
        auto result = realize_cost(
            solution, instance,
            realization_seed(options.seed, instance.seed, r), r);
        if (!options.keep_leg_times)
            result.leg_times.clear();
        record.realizations.push_back(std::move(result));
    }
}

template <typename Work>
void parallel_for(std::size_t count, std::size_t threads, Work const &work)
{
    threads = std::min(threads, count);
    if (threads <= 1)
    {
        for (std::size_t i = 0; i != count; ++i)
            work(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t != threads; ++t)
        pool.emplace_back([&] {
            for (auto i = next++; i < count; i = next++)
                work(i);
        });
}

}  // namespace

RunRecord evaluate_solution(Solution const &solution,
                            Instance const &instance,
                            BenchmarkOptions const &options)
{
    auto record = blank_record(solution.solver_name, instance);
    record.runtime_s = solution.wall_time;
    fill_realizations(record, solution, instance, options);
    return record;
}

std::vector<MetricsReport> aggregate(std::span<RunRecord const> runs)
{
    std::vector<std::string> solver_order;
    for (auto const &run : runs)
        if (std::find(solver_order.begin(), solver_order.end(), run.solver)
            == solver_order.end())
            solver_order.push_back(run.solver);

    using Key = std::tuple<std::size_t, int, int, int>;
    std::map<Key, std::vector<RunRecord const *>> groups;
    for (auto const &run : runs)
    {
        auto const rank = static_cast<std::size_t>(
            std::find(solver_order.begin(), solver_order.end(), run.solver)
            - solver_order.begin());
        groups[{rank,
                run.size,
                static_cast<int>(run.problem_type),
                static_cast<int>(run.depot_config)}]
            .push_back(&run);
    }

    std::vector<MetricsReport> rows;
    for (auto const &[key, members] : groups)
    {
        MetricsReport row;
        row.solver_name = members.front()->solver;
        row.size = members.front()->size;
        row.problem_type = members.front()->problem_type;
        row.depot_config = members.front()->depot_config;
        row.instances = members.size();

        std::vector<double> tcs, robs, cvrs, runtimes;
        std::size_t feasible = 0;
        for (auto const *run : members)
        {
            runtimes.push_back(run->runtime_s);
            cvrs.push_back(run->cvr_percent());
            if (run->failed)
            {
                ++row.failures;
                continue;
            }
            tcs.push_back(run->tc_mean());
            robs.push_back(run->robustness());
            feasible += run->feasible();
        }
        row.total_cost = mean(tcs);
        row.robustness = mean(robs);
        row.cvr_percent = mean(cvrs);
        row.runtime_s = mean(runtimes);
        row.feasibility
            = static_cast<double>(feasible) / static_cast<double>(members.size());
        rows.push_back(std::move(row));
    }
    return rows;
}

BenchmarkReport run_benchmark(std::span<solvers::Solver const *const> solvers,
                              std::span<Instance const> instances,
                              BenchmarkOptions const &options)
{
    std::vector<PlanningMatrix> matrices;
    matrices.reserve(instances.size());
    for (auto const &instance : instances)
        matrices.emplace_back(instance);

    auto const items = solvers.size() * instances.size();
    std::vector<RunRecord> runs(items);

    parallel_for(items, resolve_threads(options.threads), [&](std::size_t item) {
        auto const &solver = *solvers[item / instances.size()];
        auto const i = item % instances.size();
        auto const &instance = instances[i];

        auto record = blank_record(solver.name(), instance);
        auto const seed = derive_seed(options.seed, solver.name(), instance.seed);
        auto const start = std::chrono::steady_clock::now();
        try
        {
            auto solution = solver.solve(instance, matrices[i], seed);
            record.runtime_s = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
            record.planned_cost = planned_cost(solution, instance, matrices[i]);
            fill_realizations(record, solution, instance, options);
        }
        catch (std::exception const &error)
        {
            record.runtime_s = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
            record.failed = true;
            record.diagnostic = error.what();
        }
        runs[item] = std::move(record);
    });

    BenchmarkReport report;
    report.realizations = options.realizations;
    report.seed = options.seed;
    report.rows = aggregate(runs);
    report.runs = std::move(runs);
    return report;
}

BenchmarkReport evaluate_solutions(std::span<Instance const> instances,
                                   std::span<Solution const> solutions,
                                   std::span<std::string const> solution_instance_ids,
                                   BenchmarkOptions const &options)
{
    if (solutions.size() != solution_instance_ids.size())
        throw std::invalid_argument("evaluate_solutions: id list size mismatch");

    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i != instances.size(); ++i)
        by_id.emplace(instances[i].id, i);

    std::vector<RunRecord> runs(solutions.size());
    parallel_for(solutions.size(), resolve_threads(options.threads), [&](std::size_t s) {
        auto const it = by_id.find(solution_instance_ids[s]);
        if (it == by_id.end())
        {
            runs[s].solver = solutions[s].solver_name;
            runs[s].instance_id = solution_instance_ids[s];
            runs[s].failed = true;
            runs[s].diagnostic = "no instance with id '" + solution_instance_ids[s] + "'";
            return;
        }
        runs[s] = evaluate_solution(solutions[s], instances[it->second], options);
    });

    BenchmarkReport report;
    report.realizations = options.realizations;
    report.seed = options.seed;
    report.rows = aggregate(runs);
    report.runs = std::move(runs);
    return report;
}

}  // namespace svrp::eval
