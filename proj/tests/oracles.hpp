#pragma once

// Independent reference computations used by the test suites. These work
// straight from the model formulas and never call the stochastic, planning
// or eval modules; only the random stream and the domain types are shared.

#include "svrp/core.hpp"
#include "svrp/generator.hpp"
#include "svrp/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace oracles {

using namespace svrp;

inline double gaussian_pdf(double x, double mean, double sd)
{
    return std::exp(-(x - mean) * (x - mean) / (2.0 * sd * sd))
           / (sd * std::sqrt(2.0 * M_PI));
}

inline double mean(std::vector<double> const &values)
{
    if (values.empty())
        return 0.0;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    return sum / static_cast<double>(values.size());
}

inline double population_variance(std::vector<double> const &values)
{
    auto const m = mean(values);
    double sum = 0.0;
    for (double v : values)
        sum += (v - m) * (v - m);
    return sum / static_cast<double>(values.size());
}

inline double sample_variance(std::vector<double> const &values)
{
    return population_variance(values) * static_cast<double>(values.size())
           / static_cast<double>(values.size() - 1);
}

inline double distance(Location a, Location b)
{
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
}

inline double kernel(double hours, StochasticParams const &p)
{
    return gaussian_pdf(hours, p.mu_morning, p.sigma_peak)
           + gaussian_pdf(hours, p.mu_evening, p.sigma_peak);
}

// Expected leg time with the time-of-day terms frozen at the start of the
// hour in which the leg departs.
inline double planned_leg(Location a, Location b, double clock, StochasticParams const &p)
{
    auto const d = distance(a, b);
    auto const minute = std::fmod(std::fmod(clock, 1440.0) + 1440.0, 1440.0);
    auto const hour = std::floor(minute / 60.0);
    auto const k = kernel(hour, p);
    auto const mu = p.mu_base + p.delta * k;
    auto const sigma = p.sigma_base + p.epsilon * k;
    auto const congestion = p.alpha * (p.beta_base + p.gamma_amp * k)
                            * (1.0 - std::exp(-d / p.lambda_dist));
    return 60.0 * d / p.speed_v + congestion * std::exp(mu + sigma * sigma / 2.0);
}

inline Location node_location(Instance const &instance, std::size_t node)
{
    if (node < instance.depots.size())
        return instance.depots[node];
    return instance.customers[node - instance.depots.size()].location;
}

inline double naive_route_cost(Instance const &instance,
                               std::size_t depot,
                               std::vector<int> const &order)
{
    if (order.empty())
        return 0.0;
    auto clock = instance.start_time;
    double cost = 0.0;
    auto here = instance.depots[depot];
    for (int id : order)
    {
        auto const &c = instance.customers[static_cast<std::size_t>(id - 1)];
        auto const leg = planned_leg(here, c.location, clock, instance.stochastic);
        cost += leg;
        clock += leg;
        if (c.has_window && clock < c.window.start)
            clock = c.window.start;
        here = c.location;
    }
    return cost + planned_leg(here, instance.depots[depot], clock, instance.stochastic);
}

inline double naive_planned_cost(Solution const &solution, Instance const &instance)
{
    double total = 0.0;
    for (auto const &route : solution.routes)
        total += naive_route_cost(instance, route.depot, route.customers);
    return total;
}

// Exhaustive search over visiting orders of all customers on one route
// from depot 0.
template <typename Matrix>
double brute_force_single_route(Instance const &instance, Matrix const &)
{
    std::vector<int> order(instance.customers.size());
    std::iota(order.begin(), order.end(), 1);
    auto best = std::numeric_limits<double>::infinity();
    do
        best = std::min(best, naive_route_cost(instance, 0, order));
    while (std::next_permutation(order.begin(), order.end()));
    return best;
}

struct NaiveMetrics {
    double tc = 0.0;
    double cvr = 0.0;
    bool feasible = true;
    double rob = 0.0;
};

// One realized leg: log-normal delay multiplier, then a Poisson number of
// accidents each lasting U(min, max) hours.
inline double realized_leg(Location a, Location b, double clock,
                           StochasticParams const &p, RandomStream &rng)
{
    auto const d = distance(a, b);
    auto const hours = std::fmod(std::fmod(clock, 1440.0) + 1440.0, 1440.0) / 60.0;
    auto const k = kernel(hours, p);
    auto const multiplier
        = std::exp(rng.normal(p.mu_base + p.delta * k, p.sigma_base + p.epsilon * k));
    auto const congestion = p.alpha * (p.beta_base + p.gamma_amp * k)
                            * (1.0 - std::exp(-d / p.lambda_dist));
    auto const rate = p.lambda_scale * gaussian_pdf(hours, p.mu_night, p.sigma_acc);
    auto const accidents = rng.poisson(rate);
    double delay = 0.0;
    for (std::uint64_t i = 0; i != accidents; ++i)
        delay += 60.0 * rng.uniform(p.accident_delay_min, p.accident_delay_max);
    return 60.0 * d / p.speed_v + congestion * multiplier + delay;
}

inline NaiveMetrics naive_metrics(Solution const &solution,
                                  Instance const &instance,
                                  std::uint64_t run_seed,
                                  std::size_t realizations)
{
    auto const depots = instance.depots.size();
    auto const n = instance.customers.size();
    std::vector<double> totals;
    double cvr_sum = 0.0;
    NaiveMetrics metrics;

    for (std::size_t r = 0; r != realizations; ++r)
    {
        auto const seed = derive_seed(run_seed, "realization", instance.seed, r);
        std::vector<bool> violated(n + 1, false);
        double total = 0.0;
        for (auto const &route : solution.routes)
        {
            if (route.customers.empty())
                continue;
            int load = 0;
            for (int id : route.customers)
                load += instance.customers[static_cast<std::size_t>(id - 1)].demand;

            auto clock = instance.start_time;
            std::size_t node = route.depot;
            auto leg_to = [&](std::size_t next) {
                RandomStream rng(seed, "travel", (std::uint64_t(node) << 32) | next);
                auto const t = realized_leg(node_location(instance, node),
                                            node_location(instance, next), clock,
                                            instance.stochastic, rng);
                total += t;
                clock += t;
                node = next;
            };
            for (int id : route.customers)
            {
                leg_to(depots + static_cast<std::size_t>(id) - 1);
                auto const &c = instance.customers[static_cast<std::size_t>(id - 1)];
                if (load > instance.fleet.capacity)
                    violated[id] = true;
                if (c.has_window)
                {
                    if (clock > c.window.start + c.window.length)
                        violated[id] = true;
                    clock = std::max(clock, c.window.start);
                }
            }
            leg_to(route.depot);
        }
        auto const count = std::count(violated.begin(), violated.end(), true);
        totals.push_back(total);
        cvr_sum += 100.0 * static_cast<double>(count) / static_cast<double>(n);
        if (count > 0)
            metrics.feasible = false;
    }
    metrics.tc = mean(totals);
    metrics.cvr = cvr_sum / static_cast<double>(realizations);
    metrics.rob = population_variance(totals);
    return metrics;
}

inline Instance random_small_instance(RandomStream &rng, int index)
{
    generator::GeneratorConfig config;
    config.n_customers = static_cast<int>(rng.uniform_int(3, 30));
    config.problem_type = rng.bernoulli(0.5) ? ProblemType::TWVRP : ProblemType::CVRP;
    config.depot_config = static_cast<DepotConfig>(rng.uniform_int(0, 2));
    config.seed = 10000 + static_cast<std::uint64_t>(index);
    return generator::generate_instance(config);
}

// Random cover of all customers by at most num_vehicles routes; capacity is
// ignored so that over-capacity routes occur.
inline Solution random_solution(Instance const &instance, RandomStream &rng)
{
    std::vector<int> ids(instance.customers.size());
    std::iota(ids.begin(), ids.end(), 1);
    for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[static_cast<std::size_t>(
                                  rng.uniform_int(0, static_cast<std::int64_t>(i - 1)))]);

    auto const routes = static_cast<std::size_t>(
        rng.uniform_int(1, instance.fleet.num_vehicles));
    Solution solution;
    solution.solver_name = "random";
    for (std::size_t r = 0; r != routes; ++r)
        solution.routes.push_back(
            {static_cast<std::size_t>(rng.uniform_int(
                 0, static_cast<std::int64_t>(instance.depots.size()) - 1)),
             {}});
    for (int id : ids)
        solution.routes[static_cast<std::size_t>(rng.uniform_int(
                            0, static_cast<std::int64_t>(routes) - 1))]
            .customers.push_back(id);
    return solution;
}

// Text rendering of fixed random streams, compared byte for byte against
// tests/data/golden_random.txt.
inline std::string golden_random_vectors()
{
    std::string text;
    char line[128];
    auto emit = [&](char const *fmt, auto value) {
        std::snprintf(line, sizeof line, fmt, value);
        text += line;
    };

    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL})
        for (char const *label : {"default", "travel", "customers"})
        {
            text += "stream " + std::to_string(seed) + " " + label + "\n";
            emit("derive %016llx\n",
                 static_cast<unsigned long long>(derive_seed(seed, label, 3, 1)));
            RandomStream rng(seed, label, 3, 1);
            for (int i = 0; i != 4; ++i)
                emit("u64 %016llx\n", static_cast<unsigned long long>(rng.next_u64()));
            for (int i = 0; i != 4; ++i)
                emit("uniform %a\n", rng.uniform());
            for (int i = 0; i != 4; ++i)
                emit("int %lld\n", static_cast<long long>(rng.uniform_int(1, 10)));
            for (int i = 0; i != 4; ++i)
                emit("normal %a\n", rng.normal());
            for (double lambda : {0.02, 3.5, 750.0})
                emit("poisson %llu\n", static_cast<unsigned long long>(rng.poisson(lambda)));
        }
    return text;
}

}  // namespace oracles
