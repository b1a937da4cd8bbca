#include "svrp/solvers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace svrp::solvers {

namespace {

constexpr double kImprovementEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Running planning state along a route.
struct Cursor {
    std::size_t node;
    double clock;
    double cost;
};

void advance(Cursor &cursor,
             Instance const &instance,
             PlanningMatrix const &matrix,
             int id)
{
    auto const next = instance.customer_node(id);
    auto const leg = matrix.at(cursor.node, next, cursor.clock);
    cursor.cost += leg;
    cursor.clock += leg;
    auto const &customer = instance.customer(id);
    if (customer.has_window)
        cursor.clock = std::max(cursor.clock, customer.window.start);
    cursor.node = next;
}

double close(Cursor const &cursor,
             Instance const &instance,
             PlanningMatrix const &matrix,
             std::size_t depot)
{
    return cursor.cost
           + matrix.at(cursor.node, instance.depot_node(depot), cursor.clock);
}

struct Insertion {
    std::size_t position = 0;
    double cost = kInf;  // route cost after insertion
};

Insertion cheapest_insertion(Instance const &instance,
                             PlanningMatrix const &matrix,
                             Route const &route,
                             int id)
{
    Insertion best;
    std::vector<int> trial;
    trial.reserve(route.customers.size() + 1);
    for (std::size_t pos = 0; pos <= route.customers.size(); ++pos)
    {
        trial.assign(route.customers.begin(), route.customers.end());
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), id);
        auto const cost
            = schedule_route(instance, matrix, route.depot, trial).cost;
        if (cost < best.cost)
            best = {pos, cost};
    }
    return best;
}

std::size_t nearest_depot(Instance const &instance,
                          PlanningMatrix const &matrix,
                          int id)
{
    std::size_t best = 0;
    auto best_time = kInf;
    for (std::size_t d = 0; d != instance.depots.size(); ++d)
    {
        auto const time = matrix.at(
            instance.depot_node(d), instance.customer_node(id), instance.start_time);
        if (time < best_time)
        {
            best_time = time;
            best = d;
        }
    }
    return best;
}

}  // namespace

bool repair_leftovers(std::vector<Route> &routes,
                      std::vector<int> leftovers,
                      Instance const &instance,
                      PlanningMatrix const &matrix)
{
    auto const capacity = instance.fleet.capacity;
    auto const max_routes = static_cast<std::size_t>(instance.fleet.num_vehicles);

    std::stable_sort(leftovers.begin(), leftovers.end(), [&](int a, int b) {
        return instance.customer(a).demand > instance.customer(b).demand;
    });

    std::vector<int> loads;
    for (auto const &route : routes)
        loads.push_back(route_load(route, instance));

    for (int id : leftovers)
    {
        auto const demand = instance.customer(id).demand;
        if (demand > capacity)
            return false;

        if (routes.size() < max_routes)
        {
            routes.push_back({nearest_depot(instance, matrix, id), {id}});
            loads.push_back(demand);
            continue;
        }

        // Direct insertion into a route with room.
        std::size_t best_route = routes.size();
        Insertion best;
        auto best_delta = kInf;
        for (std::size_t r = 0; r != routes.size(); ++r)
        {
            if (loads[r] + demand > capacity)
                continue;
            auto const before = schedule_route(instance, matrix, routes[r]).cost;
            auto const ins = cheapest_insertion(instance, matrix, routes[r], id);
            if (ins.cost - before < best_delta)
            {
                best_delta = ins.cost - before;
                best_route = r;
                best = ins;
            }
        }
        if (best_route != routes.size())
        {
            auto &seq = routes[best_route].customers;
            seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best.position), id);
            loads[best_route] += demand;
            continue;
        }

        // Eject one customer u from route r to make room, move u to r2.
        struct Eject {
            std::size_t route, victim_pos, target;
            Insertion into_route, into_target;
        };
        Eject chosen{};
        auto chosen_delta = kInf;
        for (std::size_t r = 0; r != routes.size(); ++r)
        {
            auto const &seq = routes[r].customers;
            auto const before_r = schedule_route(instance, matrix, routes[r]).cost;
            for (std::size_t p = 0; p != seq.size(); ++p)
            {
                auto const victim = seq[p];
                auto const victim_demand = instance.customer(victim).demand;
                if (loads[r] - victim_demand + demand > capacity)
                    continue;

                Route without = routes[r];
                without.customers.erase(without.customers.begin()
                                        + static_cast<std::ptrdiff_t>(p));
                auto const into_route
                    = cheapest_insertion(instance, matrix, without, id);

                for (std::size_t r2 = 0; r2 != routes.size(); ++r2)
                {
                    if (r2 == r || loads[r2] + victim_demand > capacity)
                        continue;
                    auto const before_r2
                        = schedule_route(instance, matrix, routes[r2]).cost;
                    auto const into_target = cheapest_insertion(
                        instance, matrix, routes[r2], victim);
                    auto const delta = into_route.cost - before_r
                                       + into_target.cost - before_r2;
                    if (delta < chosen_delta)
                    {
                        chosen_delta = delta;
                        chosen = {r, p, r2, into_route, into_target};
                    }
                }
            }
        }
        if (chosen_delta == kInf)
            return false;

        auto &seq = routes[chosen.route].customers;
        auto const victim = seq[chosen.victim_pos];
        auto const victim_demand = instance.customer(victim).demand;
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(chosen.victim_pos));
        seq.insert(seq.begin()
                       + static_cast<std::ptrdiff_t>(chosen.into_route.position),
                   id);
        auto &target = routes[chosen.target].customers;
        target.insert(target.begin()
                          + static_cast<std::ptrdiff_t>(
                              chosen.into_target.position),
                      victim);
        loads[chosen.route] += demand - victim_demand;
        loads[chosen.target] += victim_demand;
    }

    return true;
}

Solution nearest_neighbor_construct(Instance const &instance,
                                    PlanningMatrix const &matrix)
{
    auto const n = static_cast<int>(instance.num_customers());
    auto const capacity = instance.fleet.capacity;
    auto const max_routes = static_cast<std::size_t>(instance.fleet.num_vehicles);

    std::vector<char> visited(n + 1, 0);
    int remaining = n;

    Solution solution;
    solution.solver_name = "nn";

    while (remaining > 0 && solution.routes.size() < max_routes)
    {
        // Open at the (depot, customer) pair with the shortest first leg.
        std::size_t depot = 0;
        int first = 0;
        auto best = kInf;
        for (std::size_t d = 0; d != instance.depots.size(); ++d)
            for (int id = 1; id <= n; ++id)
            {
                if (visited[id] || instance.customer(id).demand > capacity)
                    continue;
                auto const time = matrix.at(instance.depot_node(d),
                                            instance.customer_node(id),
                                            instance.start_time);
                if (time < best)
                {
                    best = time;
                    depot = d;
                    first = id;
                }
            }
        if (first == 0)
            break;

        Route route{depot, {}};
        Cursor cursor{instance.depot_node(depot), instance.start_time, 0.0};
        int load = 0;
        int next = first;
        while (next != 0)
        {
            route.customers.push_back(next);
            visited[next] = 1;
            --remaining;
            load += instance.customer(next).demand;
            advance(cursor, instance, matrix, next);

            next = 0;
            auto nearest = kInf;
            for (int id = 1; id <= n; ++id)
            {
                if (visited[id] || load + instance.customer(id).demand > capacity)
                    continue;
                auto const time = matrix.at(
                    cursor.node, instance.customer_node(id), cursor.clock);
                if (time < nearest)
                {
                    nearest = time;
                    next = id;
                }
            }
        }
        solution.routes.push_back(std::move(route));
    }

    if (remaining > 0)
    {
        std::vector<int> leftovers;
        for (int id = 1; id <= n; ++id)
            if (!visited[id])
                leftovers.push_back(id);
        if (!repair_leftovers(solution.routes, leftovers, instance, matrix))
            throw ConstructionError(
                "nearest neighbor: " + std::to_string(leftovers.size())
                + " customers do not fit in " + std::to_string(max_routes)
                + " vehicles of capacity " + std::to_string(capacity));
    }

    return solution;
}

bool best_two_opt_move(Instance const &instance,
                       PlanningMatrix const &matrix,
                       Route &route)
{
    auto const &seq = route.customers;
    auto const len = seq.size();
    if (len < 2)
        return false;

    // prefix[k]: state before visiting seq[k].
    std::vector<Cursor> prefix;
    prefix.reserve(len + 1);
    prefix.push_back({instance.depot_node(route.depot), instance.start_time, 0.0});
    for (std::size_t k = 0; k != len; ++k)
    {
        auto cursor = prefix.back();
        advance(cursor, instance, matrix, seq[k]);
        prefix.push_back(cursor);
    }
    auto const current = close(prefix.back(), instance, matrix, route.depot);

    auto best_cost = current - kImprovementEps;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    for (std::size_t i = 0; i + 1 < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
        {
            auto cursor = prefix[i];
            for (std::size_t k = j + 1; k-- > i;)
                advance(cursor, instance, matrix, seq[k]);
            for (std::size_t k = j + 1; k < len; ++k)
                advance(cursor, instance, matrix, seq[k]);
            auto const cost = close(cursor, instance, matrix, route.depot);
            if (cost < best_cost)
            {
                best_cost = cost;
                best_i = i;
                best_j = j;
            }
        }

    if (best_j == 0)
        return false;

    std::reverse(route.customers.begin() + static_cast<std::ptrdiff_t>(best_i),
                 route.customers.begin() + static_cast<std::ptrdiff_t>(best_j) + 1);
    return true;
}

Solution two_opt_improve(Solution solution,
                         Instance const &instance,
                         PlanningMatrix const &matrix)
{
    for (auto &route : solution.routes)
        while (best_two_opt_move(instance, matrix, route))
            ;
    return solution;
}

PenalizedScore penalized_cost(Solution const &solution,
                              Instance const &instance,
                              PlanningMatrix const &matrix,
                              double lambda)
{
    PenalizedScore result;
    for (auto const &route : solution.routes)
    {
        auto const schedule = schedule_route(instance, matrix, route);
        result.cost += schedule.cost;
        result.lateness += schedule.lateness;
        result.capacity_excess
            += std::max(0, schedule.load - instance.fleet.capacity);
    }
    result.penalty = result.capacity_excess + result.lateness;
    result.score = result.cost + lambda * result.penalty;
    return result;
}

}  // namespace svrp::solvers
