#pragma once

#include "svrp/core.hpp"

#include <vector>

namespace fixtures {

using namespace svrp;

struct Site {
    Location where;
    int demand = 1;
    double window_start = -1.0;  // negative: no window
    double window_length = 0.0;
};

inline Instance make_instance(std::vector<Location> depots,
                              std::vector<Site> const &sites,
                              int capacity,
                              int vehicles,
                              StochasticParams params = StochasticParams::deterministic())
{
    Instance instance;
    instance.id = "fixture";
    instance.extent = 1000.0;
    instance.depots = std::move(depots);
    instance.fleet = {vehicles, capacity};
    instance.stochastic = params;
    for (std::size_t i = 0; i != sites.size(); ++i)
    {
        Customer c;
        c.id = static_cast<int>(i) + 1;
        c.location = sites[i].where;
        c.demand = sites[i].demand;
        if (sites[i].window_start >= 0.0)
        {
            c.has_window = true;
            c.window = {sites[i].window_start, sites[i].window_length};
            instance.problem_type = ProblemType::TWVRP;
        }
        instance.customers.push_back(c);
    }
    instance.check_invariants();
    return instance;
}

}  // namespace fixtures
