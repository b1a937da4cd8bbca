#include "svrp/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace svrp {

namespace {

std::string lower(std::string text)
{
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return text;
}

void require(bool condition, std::string const &message)
{
    if (!condition)
        throw InvariantError(message);
}

bool finite_positive(double value)
{
    return std::isfinite(value) && value > 0.0;
}

}  // namespace

double euclidean_distance(Location const &a, Location const &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool TimeWindow::valid() const
{
    return std::isfinite(start) && std::isfinite(length) && start >= 0.0
           && start < kMinutesPerDay && length > 0.0
           && start + length <= kMinutesPerDay;
}

std::string to_string(ProblemType type)
{
    return type == ProblemType::CVRP ? "CVRP" : "TWVRP";
}

std::string to_string(Profile profile)
{
    return profile == Profile::Residential ? "residential" : "commercial";
}

std::string to_string(DepotConfig config)
{
    switch (config)
    {
    case DepotConfig::Single:
        return "single";
    case DepotConfig::MultiRandom:
        return "multi_random";
    case DepotConfig::DepotsEqualCity:
        return "depots_equal_city";
    }
    return "single";
}

ProblemType parse_problem_type(std::string const &text)
{
    auto const name = lower(text);
    if (name == "cvrp")
        return ProblemType::CVRP;
    if (name == "twvrp")
        return ProblemType::TWVRP;
    throw std::invalid_argument("unknown problem type '" + text + "'");
}

Profile parse_profile(std::string const &text)
{
    auto const name = lower(text);
    if (name == "residential")
        return Profile::Residential;
    if (name == "commercial")
        return Profile::Commercial;
    throw std::invalid_argument("unknown customer profile '" + text + "'");
}

DepotConfig parse_depot_config(std::string const &text)
{
    auto const name = lower(text);
    if (name == "single")
        return DepotConfig::Single;
    if (name == "multi_random" || name == "multi")
        return DepotConfig::MultiRandom;
    if (name == "depots_equal_city" || name == "city")
        return DepotConfig::DepotsEqualCity;
    throw std::invalid_argument("unknown depot config '" + text + "'");
}

void StochasticParams::validate() const
{
    require(finite_positive(sigma_peak), "sigma_peak must be > 0");
    require(finite_positive(sigma_base), "sigma_base must be > 0");
    require(finite_positive(sigma_acc), "sigma_acc must be > 0");
    require(finite_positive(lambda_dist), "lambda_dist must be > 0");
    require(finite_positive(speed_v), "speed_v must be > 0");
    require(std::isfinite(lambda_scale) && lambda_scale >= 0.0,
            "lambda_scale must be >= 0");
    require(std::isfinite(accident_delay_min) && accident_delay_min >= 0.0,
            "accident_delay_min must be >= 0");
    require(accident_delay_min < accident_delay_max,
            "accident_delay_min must be < accident_delay_max");
    require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
    require(std::isfinite(beta_base) && beta_base >= 0.0,
            "beta_base must be >= 0");
    require(std::isfinite(gamma_amp) && gamma_amp >= 0.0,
            "gamma_amp must be >= 0");
    require(std::isfinite(delta) && delta >= 0.0, "delta must be >= 0");
    require(std::isfinite(epsilon) && epsilon >= 0.0, "epsilon must be >= 0");
    require(std::isfinite(mu_base), "mu_base must be finite");
    require(std::isfinite(mu_morning) && std::isfinite(mu_evening)
                && std::isfinite(mu_night),
            "peak centers must be finite");
}

StochasticParams StochasticParams::deterministic()
{
    StochasticParams params;
    params.alpha = 0.0;
    params.lambda_scale = 0.0;
    return params;
}

void TimeWindowParams::validate() const
{
    require(finite_positive(w_min), "w_min must be > 0");
    require(std::isfinite(w_max) && w_min <= w_max, "w_min must be <= w_max");
    require(std::isfinite(w_max_com) && w_max_com >= w_min,
            "w_max_com must be >= w_min");
    require(w_max < kMinutesPerDay && w_max_com < kMinutesPerDay,
            "window lengths must be shorter than a day");
    require(residential_fraction >= 0.0 && residential_fraction <= 1.0,
            "residential_fraction must lie in [0, 1]");
    require(finite_positive(res_morning_sigma)
                && finite_positive(res_evening_sigma)
                && finite_positive(com_sigma),
            "window sigmas must be > 0");
    require(std::isfinite(res_morning_mean) && std::isfinite(res_evening_mean)
                && std::isfinite(com_mean),
            "window means must be finite");
}

Location const &Instance::node_location(std::size_t node) const
{
    if (node < depots.size())
        return depots[node];
    return customers[node - depots.size()].location;
}

long Instance::total_demand() const
{
    return std::accumulate(customers.begin(),
                           customers.end(),
                           0L,
                           [](long sum, Customer const &c) {
                               return sum + c.demand;
                           });
}

void Instance::check_invariants() const
{
    require(finite_positive(extent), "extent must be > 0");
    require(!depots.empty(), "instance needs at least one depot");
    require(fleet.num_vehicles >= 1, "fleet.num_vehicles must be >= 1");
    require(fleet.capacity >= 1, "fleet.capacity must be >= 1");
    require(std::isfinite(start_time) && start_time >= 0.0
                && start_time < kMinutesPerDay,
            "start_time must lie in [0, 1440)");
    stochastic.validate();
    tw_params.validate();

    auto inside = [&](Location const &loc) {
        return std::isfinite(loc.x) && std::isfinite(loc.y) && loc.x >= 0.0
               && loc.y >= 0.0 && loc.x <= extent && loc.y <= extent;
    };

    for (std::size_t d = 0; d != depots.size(); ++d)
        require(inside(depots[d]),
                "depot " + std::to_string(d) + " lies outside the extent");

    for (std::size_t i = 0; i != customers.size(); ++i)
    {
        auto const &c = customers[i];
        auto const tag = "customer " + std::to_string(c.id);
        require(c.id == static_cast<int>(i) + 1,
                "customer ids must be contiguous from 1 (position "
                    + std::to_string(i) + " has id " + std::to_string(c.id)
                    + ")");
        require(c.demand >= 1, tag + ": demand must be >= 1");
        require(inside(c.location), tag + ": location outside the extent");
        if (problem_type == ProblemType::TWVRP)
        {
            require(c.has_window, tag + ": TWVRP customers need a window");
            require(c.window.valid(), tag + ": invalid time window");
        }
        else
            require(!c.has_window, tag + ": CVRP customers carry no window");
    }
}

CoverageReport check_coverage(Solution const &solution,
                              Instance const &instance)
{
    auto const n = instance.num_customers();
    std::vector<char> seen(n + 1, 0);
    std::size_t count = 0;

    for (auto const &route : solution.routes)
        for (int id : route.customers)
        {
            if (id < 1 || static_cast<std::size_t>(id) > n)
                return {false, "unknown customer id " + std::to_string(id)};
            if (seen[id])
                return {false,
                        "customer " + std::to_string(id) + " visited twice"};
            seen[id] = 1;
            ++count;
        }

    if (count != n)
        for (std::size_t id = 1; id <= n; ++id)
            if (!seen[id])
                return {false,
                        "customer " + std::to_string(id) + " not visited"};

    return {};
}

int route_load(Route const &route, Instance const &instance)
{
    int load = 0;
    for (int id : route.customers)
        load += instance.customer(id).demand;
    return load;
}

CoverageReport check_solution(Solution const &solution,
                              Instance const &instance)
{
    auto coverage = check_coverage(solution, instance);
    if (!coverage.ok)
        return coverage;

    if (solution.routes.size()
        > static_cast<std::size_t>(instance.fleet.num_vehicles))
        return {false,
                std::to_string(solution.routes.size()) + " routes exceed "
                    + std::to_string(instance.fleet.num_vehicles)
                    + " vehicles"};

    for (std::size_t r = 0; r != solution.routes.size(); ++r)
    {
        auto const &route = solution.routes[r];
        if (route.depot >= instance.depots.size())
            return {false,
                    "route " + std::to_string(r) + " uses unknown depot "
                        + std::to_string(route.depot)};
        auto const load = route_load(route, instance);
        if (load > instance.fleet.capacity)
            return {false,
                    "route " + std::to_string(r) + " load "
                        + std::to_string(load) + " exceeds capacity "
                        + std::to_string(instance.fleet.capacity)};
    }

    return {};
}

double canonical_real(double value)
{
    if (!std::isfinite(value))
        return value;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.9g", value);
    auto const rounded = std::strtod(buffer, nullptr);
    return rounded == 0.0 ? 0.0 : rounded;  // drop negative zero
}

}  // namespace svrp
