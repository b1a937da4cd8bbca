#pragma once

#include "svrp/core.hpp"
#include "svrp/planning.hpp"
#include "svrp/random.hpp"

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svrp::solvers {

// A construction could not place every customer within the fleet.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Greedy nearest-neighbor construction. A route opens at the depot nearest
// its first customer and extends to the nearest unvisited customer that
// still fits; customers left over once the fleet is exhausted go through
// a capacity repair before ConstructionError is raised.
Solution nearest_neighbor_construct(Instance const &instance,
                                    PlanningMatrix const &matrix);

// Best-improvement intra-route 2-opt on planned cost.
Solution two_opt_improve(Solution solution,
                         Instance const &instance,
                         PlanningMatrix const &matrix);

// Reverses customers[first..last] in place when that lowers the route's
// planned cost; returns true if a move was applied.
bool best_two_opt_move(Instance const &instance,
                       PlanningMatrix const &matrix,
                       Route &route);

// Places leftover customers into existing routes (direct insertion or a
// single eject-and-relocate). Returns false if some customer still does
// not fit.
bool repair_leftovers(std::vector<Route> &routes,
                      std::vector<int> leftovers,
                      Instance const &instance,
                      PlanningMatrix const &matrix);

struct PenalizedScore {
    double cost = 0.0;
    double capacity_excess = 0.0;  // units
    double lateness = 0.0;         // minutes
    double penalty = 0.0;
    double score = 0.0;

    bool feasible() const { return penalty <= 1e-9; }
};

PenalizedScore penalized_cost(Solution const &solution,
                              Instance const &instance,
                              PlanningMatrix const &matrix,
                              double lambda);

struct TabuParams {
    int tenure = 15;
    int max_iters = 200;
    int max_no_improve = 60;
    double lambda_init = 10.0;
    double lambda_up = 2.0;
    double lambda_down = 0.5;
    int adapt_window = 5;

    void validate() const;
};

// Penalty-weight schedule: after `window` consecutive infeasible
// observations lambda is multiplied by `up`, after `window` consecutive
// feasible ones by `down`. The streak resets after each adjustment.
class PenaltyController {
public:
    explicit PenaltyController(TabuParams const &params);

    void observe(bool feasible);
    double lambda() const { return lambda_; }

private:
    double lambda_;
    double up_;
    double down_;
    int window_;
    int infeasible_streak_ = 0;
    int feasible_streak_ = 0;
};

// Starts from nearest neighbor + 2-opt; explores 2-opt and relocation
// moves under the penalized objective.
Solution tabu_search(Instance const &instance,
                     PlanningMatrix const &matrix,
                     TabuParams const &params,
                     RandomStream &rng);

struct AcoParams {
    int num_ants = 50;
    double rho = 0.5;
    double alpha = 1.0;
    double beta = 2.0;
    double deposit = 1.0;
    int iterations = 100;
    double initial_pheromone = 1.0;

    void validate() const;
};

inline constexpr double kPheromoneFloor = 1e-12;
inline constexpr double kHeuristicFloor = 1e-6;

// Row-major node-by-node pheromone levels.
class PheromoneMatrix {
public:
    PheromoneMatrix(std::size_t nodes, double initial);

    double &at(std::size_t from, std::size_t to) { return tau_[from * n_ + to]; }
    double at(std::size_t from, std::size_t to) const
    {
        return tau_[from * n_ + to];
    }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> tau_;
};

// One ant's closed tour as a node sequence per route plus its length.
struct AntTour {
    std::vector<std::vector<std::size_t>> routes;  // depot, c1, ..., depot
    double length = 0.0;
};

// tau <- (1 - rho) tau + sum_k Q / L_k over the edges of tour k.
void update_pheromones(PheromoneMatrix &tau,
                       std::span<AntTour const> tours,
                       double rho,
                       double deposit);

Solution aco_solve(Instance const &instance,
                   PlanningMatrix const &matrix,
                   AcoParams const &params,
                   RandomStream &rng);

struct SolverOptions {
    TabuParams tabu;
    AcoParams aco;
    std::string external_command;
};

class Solver {
public:
    virtual ~Solver() = default;
    virtual std::string name() const = 0;
    virtual Solution solve(Instance const &instance,
                           PlanningMatrix const &matrix,
                           std::uint64_t seed) const = 0;
};

// "nn2opt", "tabu", "aco" or "external".
std::unique_ptr<Solver> make_solver(std::string const &name,
                                    SolverOptions const &options = {});

}  // namespace svrp::solvers
