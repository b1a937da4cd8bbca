#include "svrp/planning.hpp"

#include "svrp/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svrp {

PlanningMatrix::PlanningMatrix(Instance const &instance)
    : size_(instance.num_nodes()),
      base_(size_ * size_),
      distance_factor_(size_ * size_)
{
    auto const &params = instance.stochastic;
    for (std::size_t from = 0; from != size_; ++from)
        for (std::size_t to = 0; to != size_; ++to)
        {
            auto const dist = euclidean_distance(instance.node_location(from),
                                                 instance.node_location(to));
            base_[from * size_ + to] = 60.0 * dist / params.speed_v;
            distance_factor_[from * size_ + to]
                = stochastic::distance_factor(dist, params);
        }

    for (std::size_t slice = 0; slice != kSlices; ++slice)
    {
        auto const t = 60.0 * static_cast<double>(slice);
        coefficient_[slice]
            = params.alpha * stochastic::time_factor(t, params)
              * stochastic::expected_delay_multiplier(t, params);
    }
}

PlanningMatrix PlanningMatrix::from_static(
    std::vector<std::vector<double>> const &minutes)
{
    PlanningMatrix matrix;
    matrix.size_ = minutes.size();
    matrix.base_.reserve(matrix.size_ * matrix.size_);
    for (auto const &row : minutes)
    {
        if (row.size() != matrix.size_)
            throw std::invalid_argument("planning matrix must be square");
        for (double value : row)
        {
            if (!std::isfinite(value) || value < 0.0)
                throw std::invalid_argument(
                    "planning matrix entries must be finite and >= 0");
            matrix.base_.push_back(value);
        }
    }
    matrix.distance_factor_.assign(matrix.base_.size(), 0.0);
    return matrix;
}

std::size_t PlanningMatrix::slice_of(double clock_minutes)
{
    auto const slice = static_cast<std::size_t>(
        stochastic::minute_of_day(clock_minutes) / 60.0);
    return std::min(slice, kSlices - 1);
}

RouteSchedule schedule_route(Instance const &instance,
                             PlanningMatrix const &matrix,
                             std::size_t depot,
                             std::span<int const> customers)
{
    RouteSchedule schedule;
    auto clock = instance.start_time;
    auto node = instance.depot_node(depot);

    for (int id : customers)
    {
        auto const next = instance.customer_node(id);
        auto const leg = matrix.at(node, next, clock);
        schedule.cost += leg;
        clock += leg;

        auto const &customer = instance.customer(id);
        schedule.load += customer.demand;
        if (customer.has_window)
        {
            auto const end = customer.window.end();
            if (clock > end)
            {
                schedule.lateness += clock - end;
                ++schedule.late_customers;
            }
            clock = std::max(clock, customer.window.start);
        }
        node = next;
    }

    if (!customers.empty())
    {
        auto const leg = matrix.at(node, instance.depot_node(depot), clock);
        schedule.cost += leg;
        clock += leg;
    }

    schedule.end_clock = clock;
    return schedule;
}

double planned_cost(Solution const &solution,
                    Instance const &instance,
                    PlanningMatrix const &matrix)
{
    double cost = 0.0;
    for (auto const &route : solution.routes)
        cost += schedule_route(instance, matrix, route).cost;
    return cost;
}

}  // namespace svrp
