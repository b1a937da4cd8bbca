#pragma once

#include "svrp/core.hpp"

#include <array>
#include <span>
#include <vector>

namespace svrp {

/**
 * Expected travel minutes between every pair of nodes, sliced by departure
 * hour.
 *
 * An entry at slice h is the a priori travel time for a departure at minute
 * 60h: base + congestion(d, 60h) * E[R(60h)]. Because the congestion term
 * factors into a per-slice coefficient times a per-pair distance factor,
 * only two node-by-node tables are stored.
 */
class PlanningMatrix {
public:
    static constexpr std::size_t kSlices = 24;

    explicit PlanningMatrix(Instance const &instance);

    // Time-independent matrix (row-major minutes), mostly for tests and
    // external data.
    static PlanningMatrix from_static(std::vector<std::vector<double>> const &minutes);

    std::size_t size() const { return size_; }

    static std::size_t slice_of(double clock_minutes);

    double at_slice(std::size_t from, std::size_t to, std::size_t slice) const
    {
        auto const idx = from * size_ + to;
        return base_[idx] + coefficient_[slice] * distance_factor_[idx];
    }

    double at(std::size_t from, std::size_t to, double clock_minutes) const
    {
        return at_slice(from, to, slice_of(clock_minutes));
    }

private:
    PlanningMatrix() = default;

    std::size_t size_ = 0;
    std::vector<double> base_;
    std::vector<double> distance_factor_;
    std::array<double, kSlices> coefficient_{};
};

// Planning-view simulation of one route: expected leg times at the running
// clock, waiting at early arrival, lateness summed past window ends.
struct RouteSchedule {
    double cost = 0.0;
    double lateness = 0.0;
    int load = 0;
    int late_customers = 0;
    double end_clock = 0.0;
};

RouteSchedule schedule_route(Instance const &instance,
                             PlanningMatrix const &matrix,
                             std::size_t depot,
                             std::span<int const> customers);

inline RouteSchedule schedule_route(Instance const &instance,
                                    PlanningMatrix const &matrix,
                                    Route const &route)
{
    return schedule_route(instance, matrix, route.depot, route.customers);
}

// Sum of expected route costs.
double planned_cost(Solution const &solution,
                    Instance const &instance,
                    PlanningMatrix const &matrix);

}  // namespace svrp
