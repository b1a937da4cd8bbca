#include "svrp/solvers.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace svrp::solvers {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t attribute(int a, int b)
{
    auto const lo = static_cast<std::uint32_t>(std::min(a, b));
    auto const hi = static_cast<std::uint32_t>(std::max(a, b));
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

struct RouteState {
    double cost = 0.0;
    double penalty = 0.0;
};

RouteState evaluate(Instance const &instance,
                    PlanningMatrix const &matrix,
                    std::size_t depot,
                    std::span<int const> seq)
{
    auto const schedule = schedule_route(instance, matrix, depot, seq);
    auto const excess = std::max(0, schedule.load - instance.fleet.capacity);
    return {schedule.cost, excess + schedule.lateness};
}

enum class MoveKind { TwoOpt, Relocate, RelocateToNewRoute };

struct Move {
    MoveKind kind = MoveKind::TwoOpt;
    std::size_t route = 0;   // 2-opt route, or relocation source
    std::size_t i = 0;       // 2-opt start, or source position
    std::size_t j = 0;       // 2-opt end, or target position
    std::size_t target = 0;  // relocation target route, or depot for a new route
    std::uint64_t attr = 0;
    RouteState source_after;
    RouteState target_after;
    double cost = 0.0;     // total planned cost after the move
    double penalty = 0.0;  // total penalty after the move
};

class TabuWalk {
public:
    TabuWalk(Instance const &instance,
             PlanningMatrix const &matrix,
             TabuParams const &params,
             RandomStream &rng,
             std::vector<Route> routes)
        : instance_(instance),
          matrix_(matrix),
          params_(params),
          rng_(rng),
          controller_(params),
          routes_(std::move(routes))
    {
        for (auto const &route : routes_)
            states_.push_back(
                evaluate(instance_, matrix_, route.depot, route.customers));
    }

    Solution run()
    {
        record_incumbent();
        int stale = 0;
        for (int iter = 0; iter != params_.max_iters; ++iter)
        {
            Move move;
            if (!select_move(iter, move))
                break;
            apply(move);
            tabu_[move.attr] = iter + params_.tenure;

            auto const feasible = total_penalty() <= kEps;
            controller_.observe(feasible);
            if (record_incumbent())
                stale = 0;
            else if (++stale >= params_.max_no_improve)
                break;
        }

        Solution solution;
        if (best_feasible_cost_ < kInf)
            solution.routes = best_feasible_;
        else
        {
            solution.routes = best_compromise_;
            solution.flagged_infeasible = true;
        }
        return solution;
    }

private:
    double total_cost() const
    {
        double sum = 0.0;
        for (auto const &state : states_)
            sum += state.cost;
        return sum;
    }

    double total_penalty() const
    {
        double sum = 0.0;
        for (auto const &state : states_)
            sum += state.penalty;
        return sum;
    }

    bool capacity_feasible() const
    {
        return std::all_of(routes_.begin(), routes_.end(), [&](Route const &r) {
            return route_load(r, instance_) <= instance_.fleet.capacity;
        });
    }

    // Returns true when the best feasible cost improved.
    bool record_incumbent()
    {
        auto const cost = total_cost();
        auto const penalty = total_penalty();
        if (penalty <= kEps)
        {
            if (cost < best_feasible_cost_ - kEps)
            {
                best_feasible_cost_ = cost;
                best_feasible_ = routes_;
                return true;
            }
            return false;
        }
        if (capacity_feasible()
            && (penalty < best_compromise_penalty_ - kEps
                || (penalty <= best_compromise_penalty_ + kEps
                    && cost < best_compromise_cost_ - kEps)))
        {
            best_compromise_penalty_ = penalty;
            best_compromise_cost_ = cost;
            best_compromise_ = routes_;
        }
        return false;
    }

    void consider(Move const &move,
                  int iter,
                  Move &best,
                  double &best_score,
                  int &ties)
    {
        auto const lambda = controller_.lambda();
        auto const score = move.cost + lambda * move.penalty;

        auto const it = tabu_.find(move.attr);
        auto const is_tabu = it != tabu_.end() && it->second > iter;
        if (is_tabu)
        {
            auto const aspirates = move.penalty <= kEps
                                   && move.cost < best_feasible_cost_ - kEps;
            if (!aspirates)
                return;
        }
        if (score < best_score - 1e-12)
        {
            best_score = score;
            best = move;
            ties = 1;
        }
        else if (score <= best_score + 1e-12)
        {
            // Uniform choice among equally scored moves.
            ++ties;
            if (rng_.uniform_int(1, ties) == 1)
                best = move;
        }
    }

    bool select_move(int iter, Move &best)
    {
        auto const base_cost = total_cost();
        auto const base_penalty = total_penalty();

        auto best_score = kInf;
        int ties = 0;
        std::vector<int> buffer;

        for (std::size_t r = 0; r != routes_.size(); ++r)
        {
            auto const &seq = routes_[r].customers;
            auto const len = seq.size();
            auto const depot = routes_[r].depot;

            // 2-opt within route r.
            for (std::size_t i = 0; i + 1 < len; ++i)
                for (std::size_t j = i + 1; j < len; ++j)
                {
                    buffer.assign(seq.begin(), seq.end());
                    std::reverse(buffer.begin() + static_cast<std::ptrdiff_t>(i),
                                 buffer.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    Move move;
                    move.kind = MoveKind::TwoOpt;
                    move.route = r;
                    move.i = i;
                    move.j = j;
                    move.attr = attribute(seq[i], seq[j]);
                    move.source_after = evaluate(instance_, matrix_, depot, buffer);
                    move.cost = base_cost - states_[r].cost + move.source_after.cost;
                    move.penalty = base_penalty - states_[r].penalty
                                   + move.source_after.penalty;
                    consider(move, iter, best, best_score, ties);
                }

            // Relocations of each customer of route r.
            for (std::size_t p = 0; p != len; ++p)
            {
                auto const id = seq[p];
                std::vector<int> without(seq.begin(), seq.end());
                without.erase(without.begin() + static_cast<std::ptrdiff_t>(p));
                auto const source_after
                    = evaluate(instance_, matrix_, depot, without);

                for (std::size_t r2 = 0; r2 != routes_.size(); ++r2)
                {
                    auto const &host = r2 == r ? without : routes_[r2].customers;
                    for (std::size_t q = 0; q <= host.size(); ++q)
                    {
                        if (r2 == r && q == p)
                            continue;
                        buffer.assign(host.begin(), host.end());
                        buffer.insert(buffer.begin() + static_cast<std::ptrdiff_t>(q), id);

                        Move move;
                        move.kind = MoveKind::Relocate;
                        move.route = r;
                        move.i = p;
                        move.j = q;
                        move.target = r2;
                        move.attr = attribute(id, q == 0 ? 0 : host[q - 1]);
                        move.target_after = evaluate(
                            instance_, matrix_, routes_[r2].depot, buffer);
                        if (r2 == r)
                        {
                            move.source_after = move.target_after;
                            move.cost = base_cost - states_[r].cost
                                        + move.source_after.cost;
                            move.penalty = base_penalty - states_[r].penalty
                                           + move.source_after.penalty;
                        }
                        else
                        {
                            move.source_after = source_after;
                            move.cost = base_cost - states_[r].cost
                                        - states_[r2].cost + source_after.cost
                                        + move.target_after.cost;
                            move.penalty = base_penalty - states_[r].penalty
                                           - states_[r2].penalty
                                           + source_after.penalty
                                           + move.target_after.penalty;
                        }
                        consider(move, iter, best, best_score, ties);
                    }
                }

                if (routes_.size()
                    < static_cast<std::size_t>(instance_.fleet.num_vehicles))
                    for (std::size_t d = 0; d != instance_.depots.size(); ++d)
                    {
                        int const single[] = {id};
                        Move move;
                        move.kind = MoveKind::RelocateToNewRoute;
                        move.route = r;
                        move.i = p;
                        move.target = d;
                        move.attr = attribute(id, 0);
                        move.source_after = source_after;
                        move.target_after = evaluate(instance_, matrix_, d, single);
                        move.cost = base_cost - states_[r].cost + source_after.cost
                                    + move.target_after.cost;
                        move.penalty = base_penalty - states_[r].penalty
                                       + source_after.penalty
                                       + move.target_after.penalty;
                        consider(move, iter, best, best_score, ties);
                    }
            }
        }

        return best_score < kInf;
    }

    void apply(Move const &move)
    {
        switch (move.kind)
        {
        case MoveKind::TwoOpt:
        {
            auto &seq = routes_[move.route].customers;
            std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(move.i),
                         seq.begin() + static_cast<std::ptrdiff_t>(move.j) + 1);
            states_[move.route] = move.source_after;
            break;
        }
        case MoveKind::Relocate:
        {
            auto &source = routes_[move.route].customers;
            auto const id = source[move.i];
            source.erase(source.begin() + static_cast<std::ptrdiff_t>(move.i));
            auto &target = routes_[move.target].customers;
            target.insert(target.begin() + static_cast<std::ptrdiff_t>(move.j), id);
            states_[move.route] = move.source_after;
            states_[move.target] = move.target_after;
            break;
        }
        case MoveKind::RelocateToNewRoute:
        {
            auto &source = routes_[move.route].customers;
            auto const id = source[move.i];
            source.erase(source.begin() + static_cast<std::ptrdiff_t>(move.i));
            states_[move.route] = move.source_after;
            routes_.push_back({move.target, {id}});
            states_.push_back(move.target_after);
            break;
        }
        }

        for (std::size_t r = routes_.size(); r-- > 0;)
            if (routes_[r].customers.empty())
            {
                routes_.erase(routes_.begin() + static_cast<std::ptrdiff_t>(r));
                states_.erase(states_.begin() + static_cast<std::ptrdiff_t>(r));
            }
    }

    Instance const &instance_;
    PlanningMatrix const &matrix_;
    TabuParams const &params_;
    RandomStream &rng_;
    PenaltyController controller_;

    std::vector<Route> routes_;
    std::vector<RouteState> states_;
    std::unordered_map<std::uint64_t, int> tabu_;

    std::vector<Route> best_feasible_;
    double best_feasible_cost_ = kInf;
    std::vector<Route> best_compromise_;
    double best_compromise_penalty_ = kInf;
    double best_compromise_cost_ = kInf;
};

}  // namespace

void TabuParams::validate() const
{
    if (tenure < 1)
        throw std::invalid_argument("tabu tenure must be >= 1");
    if (!(lambda_init > 0.0))
        throw std::invalid_argument("tabu lambda_init must be > 0");
    if (max_iters < 0 || max_no_improve < 1 || adapt_window < 1)
        throw std::invalid_argument("tabu iteration limits must be positive");
    if (!(lambda_up > 0.0) || !(lambda_down > 0.0))
        throw std::invalid_argument("tabu lambda multipliers must be > 0");
}

PenaltyController::PenaltyController(TabuParams const &params)
    : lambda_(params.lambda_init),
      up_(params.lambda_up),
      down_(params.lambda_down),
      window_(params.adapt_window)
{
}

void PenaltyController::observe(bool feasible)
{
    if (feasible)
    {
        infeasible_streak_ = 0;
        if (++feasible_streak_ == window_)
        {
            lambda_ *= down_;
            feasible_streak_ = 0;
        }
    }
    else
    {
        feasible_streak_ = 0;
        if (++infeasible_streak_ == window_)
        {
            lambda_ *= up_;
            infeasible_streak_ = 0;
        }
    }
}

Solution tabu_search(Instance const &instance,
                     PlanningMatrix const &matrix,
                     TabuParams const &params,
                     RandomStream &rng)
{
    params.validate();
    auto start = two_opt_improve(
        nearest_neighbor_construct(instance, matrix), instance, matrix);

    TabuWalk walk(instance, matrix, params, rng, std::move(start.routes));
    auto solution = walk.run();
    solution.solver_name = "tabu";
    return solution;
}

}  // namespace svrp::solvers
