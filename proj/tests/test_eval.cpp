#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"

#include "svrp/eval.hpp"
#include "svrp/generator.hpp"
#include "svrp/io.hpp"

using namespace svrp;
using namespace svrp::eval;
using fixtures::make_instance;

namespace {

class Failing final : public solvers::Solver {
public:
    std::string name() const override { return "failing"; }
    Solution solve(Instance const &, PlanningMatrix const &, std::uint64_t) const override
    {
        throw solvers::ConstructionError("no plan");
    }
};

RealizationResult with_violations(int violations)
{
    RealizationResult r;
    r.violations = violations;
    r.feasible = violations == 0;
    return r;
}

}  // namespace

TEST_CASE("deterministic out-and-back costs sixty minutes")
{
    auto const instance = make_instance({{0, 0}}, {{{20, 0}}}, 1, 1);
    Solution const solution{{{0, {1}}}};
    auto const result = realize_cost(solution, instance, 123);
    CHECK(result.total_cost == 60.0);
    CHECK(result.violations == 0);
    CHECK(result.feasible);
}

TEST_CASE("realizations replay bit for bit")
{
    generator::GeneratorConfig config;
    config.n_customers = 25;
    config.problem_type = ProblemType::TWVRP;
    auto const instance = generator::generate_instance(config);
    PlanningMatrix const matrix(instance);
    auto const solution = solvers::make_solver("nn2opt")->solve(instance, matrix, 0);
    auto const a = realize_cost(solution, instance, 77);
    auto const b = realize_cost(solution, instance, 77);
    CHECK(a.total_cost == b.total_cost);
    CHECK(a.leg_times == b.leg_times);
    CHECK(realize_cost(solution, instance, 78).total_cost != a.total_cost);
}

TEST_CASE("late arrival is a violation, early arrival waits")
{
    auto instance = make_instance({{0, 0}}, {{{40, 0}, 1, 600.0, 60.0}}, 1, 1);
    instance.start_time = 640.0;
    Solution const solution{{{0, {1}}}};
    auto const late = realize_cost(solution, instance, 1);
    CHECK(late.violations == 1);
    CHECK(late.late_customers == 1);
    CHECK_FALSE(late.feasible);

    instance.start_time = 480.0;
    auto const early = realize_cost(solution, instance, 1);
    CHECK(early.violations == 0);
    CHECK(early.total_cost == 120.0);
}

TEST_CASE("capacity excess counts every customer on the route")
{
    auto const instance = make_instance({{0, 0}}, {{{1, 0}, 2}, {{2, 0}, 2}, {{3, 0}, 1}}, 3, 2);
    Solution const solution{{{0, {1, 2}}, {0, {3}}}};
    auto const result = realize_cost(solution, instance, 1);
    CHECK(result.over_capacity_customers == 2);
    CHECK(result.violations == 2);
    CHECK_FALSE(result.feasible);
    CHECK_FALSE(instance_feasible(std::span(&result, 1)));
}

TEST_CASE("constraint violation rate")
{
    std::vector<RealizationResult> none{with_violations(0)};
    CHECK(cvr(none, 100) == 0.0);
    std::vector<RealizationResult> two{with_violations(2)};
    CHECK(cvr(two, 100) == 2.0);
    std::vector<RealizationResult> all{with_violations(7), with_violations(7)};
    CHECK(cvr(all, 7) == 100.0);
}

TEST_CASE("feasibility rate")
{
    bool const all[] = {true, true};
    CHECK(feasibility_rate(std::span<bool const>(all)) == 1.0);
    bool const three_of_four[] = {true, false, true, true};
    CHECK(feasibility_rate(std::span<bool const>(three_of_four)) == 0.75);
    CHECK_THROWS_AS(feasibility_rate(std::span<bool const>()), std::invalid_argument);

    std::vector<std::vector<RealizationResult>> per_instance{
        {with_violations(0), with_violations(0)}, {with_violations(0), with_violations(1)}};
    CHECK(feasibility_rate(per_instance) == 0.5);
}

TEST_CASE("robustness is the population variance")
{
    std::vector<double> const flat{10, 10, 10};
    CHECK(robustness(flat) == 0.0);
    std::vector<double> const pair{9, 11};
    CHECK(robustness(pair) == 1.0);
    CHECK_THROWS_AS(robustness({}), std::invalid_argument);

    RandomStream rng(4, "variance");
    for (int i = 0; i != 1000; ++i)
    {
        std::vector<double> costs;
        for (int k = 0; k != 5; ++k)
            costs.push_back(rng.uniform(100.0, 5000.0));
        CHECK(robustness(costs) >= 0.0);
        CHECK(robustness(costs) == doctest::Approx(oracles::population_variance(costs)).epsilon(1e-9));
    }
}

TEST_CASE("benchmark agrees with an independent simulation")
{
    generator::GeneratorConfig config;
    config.n_customers = 30;
    config.problem_type = ProblemType::TWVRP;
    config.stochastic = StochasticParams::deterministic();
    auto const instance = generator::generate_instance(config);
    auto const solver = solvers::make_solver("nn2opt");
    solvers::Solver const *const list[] = {solver.get()};

    BenchmarkOptions options;
    options.seed = 5;
    auto const report = run_benchmark(list, std::span(&instance, 1), options);
    REQUIRE(report.runs.size() == 1);
    auto const &run = report.runs[0];
    CHECK(run.realizations.size() == 5);

    PlanningMatrix const matrix(instance);
    auto const solution = solver->solve(instance, matrix, derive_seed(5, "nn2opt", instance.seed));
    auto const naive = oracles::naive_metrics(solution, instance, 5, 5);
    CHECK(run.tc_mean() == doctest::Approx(naive.tc).epsilon(1e-12));
    CHECK(run.robustness() == 0.0);
    CHECK(report.rows[0].robustness == 0.0);
}

TEST_CASE("stochastic metrics match the naive recomputation")
{
    RandomStream rng(6, "pairs");
    for (int pair = 0; pair != 30; ++pair)
    {
        auto const instance = oracles::random_small_instance(rng, pair);
        auto const solution = oracles::random_solution(instance, rng);
        BenchmarkOptions options;
        options.seed = static_cast<std::uint64_t>(pair);
        auto const record = evaluate_solution(solution, instance, options);
        auto const naive = oracles::naive_metrics(solution, instance, options.seed, 5);
        CHECK(record.tc_mean() == doctest::Approx(naive.tc).epsilon(1e-9));
        CHECK(record.cvr_percent() == doctest::Approx(naive.cvr).epsilon(1e-9));
        CHECK(record.feasible() == naive.feasible);
        CHECK(record.robustness() == doctest::Approx(naive.rob).epsilon(1e-9));
    }
}

TEST_CASE("shrinking windows never lowers the violation count")
{
    generator::GeneratorConfig config;
    config.n_customers = 40;
    config.problem_type = ProblemType::TWVRP;
    config.seed = 8;
    auto instance = generator::generate_instance(config);
    PlanningMatrix const matrix(instance);
    auto const solution = solvers::make_solver("nn2opt")->solve(instance, matrix, 0);

    auto previous = realize_cost(solution, instance, 11).violations;
    for (int step = 0; step != 5; ++step)
    {
        for (auto &c : instance.customers)
            c.window.length *= 0.7;
        auto const now = realize_cost(solution, instance, 11).violations;
        CHECK(now >= previous);
        previous = now;
    }
}

TEST_CASE("more realizations can only break feasibility")
{
    RandomStream rng(9, "antitone");
    for (int trial = 0; trial != 20; ++trial)
    {
        auto const instance = oracles::random_small_instance(rng, 100 + trial);
        PlanningMatrix const matrix(instance);
        auto const solution = solvers::make_solver("nn2opt")->solve(instance, matrix, 0);
        bool previous = true;
        for (std::size_t n : {1, 3, 5, 10})
        {
            BenchmarkOptions options;
            options.realizations = n;
            options.seed = 3;
            auto const feasible = evaluate_solution(solution, instance, options).feasible();
            CHECK((previous || !feasible));
            previous = feasible;
        }
    }
}

TEST_CASE("failed runs count as fully violated and infeasible")
{
    generator::GeneratorConfig config;
    config.n_customers = 10;
    auto const instance = generator::generate_instance(config);
    Failing const failing;
    auto const nn = solvers::make_solver("nn2opt");
    solvers::Solver const *const list[] = {&failing, nn.get()};
    auto const report = run_benchmark(list, std::span(&instance, 1), {});
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].solver_name == "failing");
    CHECK(report.rows[0].failures == 1);
    CHECK(report.rows[0].cvr_percent == 100.0);
    CHECK(report.rows[0].feasibility == 0.0);
    CHECK(report.runs[0].diagnostic == "no plan");
    CHECK(report.rows[1].failures == 0);
}

TEST_CASE("benchmark reports are reproducible apart from runtimes")
{
    std::vector<Instance> instances;
    for (std::uint64_t seed = 0; seed != 3; ++seed)
    {
        generator::GeneratorConfig config;
        config.n_customers = 20;
        config.problem_type = seed % 2 ? ProblemType::TWVRP : ProblemType::CVRP;
        config.seed = seed;
        instances.push_back(generator::generate_instance(config));
    }
    auto const nn = solvers::make_solver("nn2opt");
    auto const aco = solvers::make_solver("aco");
    solvers::Solver const *const list[] = {nn.get(), aco.get()};

    auto strip = [](BenchmarkReport report) {
        for (auto &row : report.rows)
            row.runtime_s = 0.0;
        for (auto &run : report.runs)
            run.runtime_s = 0.0;
        return io::serialize_report(report);
    };
    BenchmarkOptions serial;
    serial.threads = 1;
    BenchmarkOptions parallel;
    parallel.threads = 4;
    auto const a = strip(run_benchmark(list, instances, serial));
    auto const b = strip(run_benchmark(list, instances, parallel));
    CHECK(a == b);
}
