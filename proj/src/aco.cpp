#include "svrp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace svrp::solvers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    std::size_t from;
    int id;
    double log_weight;
};

// Roulette selection over log-weights, stable for large exponents.
std::size_t roulette(std::vector<Candidate> const &candidates, RandomStream &rng)
{
    auto top = -kInf;
    for (auto const &c : candidates)
        top = std::max(top, c.log_weight);

    double total = 0.0;
    for (auto const &c : candidates)
        total += std::exp(c.log_weight - top);

    auto target = rng.uniform() * total;
    for (std::size_t k = 0; k != candidates.size(); ++k)
    {
        target -= std::exp(candidates[k].log_weight - top);
        if (target < 0.0)
            return k;
    }
    return candidates.size() - 1;
}

class Colony {
public:
    Colony(Instance const &instance,
           PlanningMatrix const &matrix,
           AcoParams const &params)
        : instance_(instance),
          matrix_(matrix),
          params_(params),
          tau_(instance.num_nodes(), params.initial_pheromone),
          log_tau_(instance.num_nodes() * instance.num_nodes())
    {
    }

    Solution run(RandomStream &rng)
    {
        auto const ant_seed = rng.next_u64();
        std::vector<AntTour> tours;
        std::vector<Route> best;
        auto best_cost = kInf;

        for (int iter = 0; iter != params_.iterations; ++iter)
        {
            refresh_log_tau();
            tours.clear();
            for (int ant = 0; ant != params_.num_ants; ++ant)
            {
                RandomStream ant_rng(ant_seed, "ant", iter, ant);
                std::vector<Route> routes;
                if (!construct(ant_rng, routes))
                    continue;

                Solution candidate;
                candidate.routes = routes;
                auto const cost = planned_cost(candidate, instance_, matrix_);
                tours.push_back(to_tour(routes, cost));
                if (cost < best_cost)
                {
                    best_cost = cost;
                    best = std::move(routes);
                }
            }
            update_pheromones(tau_, tours, params_.rho, params_.deposit);
        }

        Solution solution;
        if (best_cost < kInf)
            solution.routes = std::move(best);
        else
            solution = nearest_neighbor_construct(instance_, matrix_);
        return solution;
    }

private:
    void refresh_log_tau()
    {
        auto const n = tau_.size();
        for (std::size_t a = 0; a != n; ++a)
            for (std::size_t b = 0; b != n; ++b)
                log_tau_[a * n + b] = std::log(tau_.at(a, b));
    }

    double log_weight(std::size_t from, std::size_t to, double clock) const
    {
        auto const eta = 1.0 / std::max(matrix_.at(from, to, clock), kHeuristicFloor);
        return params_.alpha * log_tau_[from * tau_.size() + to]
               + params_.beta * std::log(eta);
    }

    bool construct(RandomStream &rng, std::vector<Route> &routes)
    {
        auto const n = static_cast<int>(instance_.num_customers());
        auto const capacity = instance_.fleet.capacity;
        auto const max_routes
            = static_cast<std::size_t>(instance_.fleet.num_vehicles);

        std::vector<char> visited(n + 1, 0);
        int remaining = n;
        std::vector<Candidate> candidates;

        while (remaining > 0 && routes.size() < max_routes)
        {
            // First customer and depot are chosen jointly.
            candidates.clear();
            for (std::size_t d = 0; d != instance_.depots.size(); ++d)
                for (int id = 1; id <= n; ++id)
                    if (!visited[id] && instance_.customer(id).demand <= capacity)
                        candidates.push_back(
                            {d, id,
                             log_weight(instance_.depot_node(d),
                                        instance_.customer_node(id),
                                        instance_.start_time)});
            if (candidates.empty())
                break;

            auto const opener = candidates[roulette(candidates, rng)];
            Route route{opener.from, {}};
            auto node = instance_.depot_node(route.depot);
            auto clock = instance_.start_time;
            int load = 0;
            int next = opener.id;

            while (next != 0)
            {
                auto const to = instance_.customer_node(next);
                clock += matrix_.at(node, to, clock);
                auto const &customer = instance_.customer(next);
                if (customer.has_window)
                    clock = std::max(clock, customer.window.start);
                node = to;
                load += customer.demand;
                visited[next] = 1;
                --remaining;
                route.customers.push_back(next);

                candidates.clear();
                for (int id = 1; id <= n; ++id)
                    if (!visited[id]
                        && load + instance_.customer(id).demand <= capacity)
                        candidates.push_back(
                            {node, id,
                             log_weight(node, instance_.customer_node(id), clock)});
                next = candidates.empty()
                           ? 0
                           : candidates[roulette(candidates, rng)].id;
            }
            routes.push_back(std::move(route));
        }

        if (remaining == 0)
            return true;

        std::vector<int> leftovers;
        for (int id = 1; id <= n; ++id)
            if (!visited[id])
                leftovers.push_back(id);
        return repair_leftovers(routes, leftovers, instance_, matrix_);
    }

    AntTour to_tour(std::vector<Route> const &routes, double cost) const
    {
        AntTour tour;
        tour.length = cost;
        for (auto const &route : routes)
        {
            std::vector<std::size_t> nodes;
            nodes.push_back(instance_.depot_node(route.depot));
            for (int id : route.customers)
                nodes.push_back(instance_.customer_node(id));
            nodes.push_back(instance_.depot_node(route.depot));
            tour.routes.push_back(std::move(nodes));
        }
        return tour;
    }

    Instance const &instance_;
    PlanningMatrix const &matrix_;
    AcoParams const &params_;
    PheromoneMatrix tau_;
    std::vector<double> log_tau_;
};

}  // namespace

void AcoParams::validate() const
{
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("aco rho must lie in (0, 1)");
    if (num_ants < 1)
        throw std::invalid_argument("aco needs at least one ant");
    if (iterations < 1)
        throw std::invalid_argument("aco needs at least one iteration");
    if (!(deposit > 0.0) || !(initial_pheromone > 0.0))
        throw std::invalid_argument("aco deposit and initial pheromone must be > 0");
    if (!(alpha >= 0.0) || !(beta >= 0.0))
        throw std::invalid_argument("aco exponents must be >= 0");
}

PheromoneMatrix::PheromoneMatrix(std::size_t nodes, double initial)
    : n_(nodes), tau_(nodes * nodes, initial)
{
}

void update_pheromones(PheromoneMatrix &tau,
                       std::span<AntTour const> tours,
                       double rho,
                       double deposit)
{
    auto const n = tau.size();
    for (std::size_t a = 0; a != n; ++a)
        for (std::size_t b = 0; b != n; ++b)
            tau.at(a, b) *= 1.0 - rho;

    for (auto const &tour : tours)
    {
        if (!(tour.length > 0.0))
            continue;
        auto const amount = deposit / tour.length;
        for (auto const &route : tour.routes)
            for (std::size_t k = 0; k + 1 < route.size(); ++k)
                tau.at(route[k], route[k + 1]) += amount;
    }

    for (std::size_t a = 0; a != n; ++a)
        for (std::size_t b = 0; b != n; ++b)
        {
            auto &value = tau.at(a, b);
            if (!std::isfinite(value) || value < kPheromoneFloor)
                value = std::isfinite(value) ? kPheromoneFloor
                                             : std::numeric_limits<double>::max();
        }
}

Solution aco_solve(Instance const &instance,
                   PlanningMatrix const &matrix,
                   AcoParams const &params,
                   RandomStream &rng)
{
    params.validate();
    Colony colony(instance, matrix, params);
    auto solution = colony.run(rng);
    solution.solver_name = "aco";
    return solution;
}

}  // namespace svrp::solvers
