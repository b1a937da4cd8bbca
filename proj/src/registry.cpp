#include "svrp/io.hpp"
#include "svrp/solvers.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>

namespace svrp::solvers {

namespace {

template <typename Solve>
Solution timed(std::string const &name, Solve solve)
{
    auto const start = std::chrono::steady_clock::now();
    auto solution = solve();
    solution.solver_name = name;
    solution.wall_time = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    return solution;
}

class NearestNeighborTwoOpt final : public Solver {
public:
    std::string name() const override { return "nn2opt"; }

    Solution solve(Instance const &instance,
                   PlanningMatrix const &matrix,
                   std::uint64_t) const override
    {
        return timed(name(), [&] {
            return two_opt_improve(nearest_neighbor_construct(instance, matrix),
                                   instance, matrix);
        });
    }
};

class Tabu final : public Solver {
public:
    explicit Tabu(TabuParams params) : params_(params) { params_.validate(); }

    std::string name() const override { return "tabu"; }

    Solution solve(Instance const &instance,
                   PlanningMatrix const &matrix,
                   std::uint64_t seed) const override
    {
        return timed(name(), [&] {
            RandomStream rng(seed, "tabu");
            return tabu_search(instance, matrix, params_, rng);
        });
    }

private:
    TabuParams params_;
};

class Aco final : public Solver {
public:
    explicit Aco(AcoParams params) : params_(params) { params_.validate(); }

    std::string name() const override { return "aco"; }

    Solution solve(Instance const &instance,
                   PlanningMatrix const &matrix,
                   std::uint64_t seed) const override
    {
        return timed(name(), [&] {
            RandomStream rng(seed, "aco");
            return aco_solve(instance, matrix, params_, rng);
        });
    }

private:
    AcoParams params_;
};

// Runs `command <instance.json> <solution.json>` and reads the solution
// back. The command sees the same canonical instance file the CLI writes.
class External final : public Solver {
public:
    explicit External(std::string command) : command_(std::move(command))
    {
        if (command_.empty())
            throw std::invalid_argument("external solver needs a command");
    }

    std::string name() const override { return "external"; }

    Solution solve(Instance const &instance,
                   PlanningMatrix const &,
                   std::uint64_t seed) const override
    {
        static std::atomic<unsigned> counter{0};
        namespace fs = std::filesystem;
        auto const dir = fs::temp_directory_path()
                         / ("svrp-external-" + std::to_string(seed) + "-"
                            + std::to_string(counter++));
        fs::create_directories(dir);
        auto const instance_path = dir / "instance.json";
        auto const solution_path = dir / "solution.json";

        auto cleanup = [&] {
            std::error_code ignored;
            fs::remove_all(dir, ignored);
        };

        try
        {
            io::write_file(instance_path, io::serialize_instance(instance));
            auto const start = std::chrono::steady_clock::now();
            auto const status = std::system((command_ + " '" + instance_path.string()
                                             + "' '" + solution_path.string() + "'")
                                                .c_str());
            auto const elapsed = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
            if (status != 0)
                throw std::runtime_error("external solver exited with status "
                                         + std::to_string(status));
            auto doc = io::parse_solution(io::read_file(solution_path), instance);
            doc.solution.wall_time = elapsed;
            if (doc.solution.solver_name.empty())
                doc.solution.solver_name = name();
            cleanup();
            return doc.solution;
        }
        catch (...)
        {
            cleanup();
            throw;
        }
    }

private:
    std::string command_;
};

}  // namespace

std::unique_ptr<Solver> make_solver(std::string const &name,
                                    SolverOptions const &options)
{
    if (name == "nn2opt")
        return std::make_unique<NearestNeighborTwoOpt>();
    if (name == "tabu")
        return std::make_unique<Tabu>(options.tabu);
    if (name == "aco")
        return std::make_unique<Aco>(options.aco);
    if (name == "external")
        return std::make_unique<External>(options.external_command);
    throw std::invalid_argument("unknown solver '" + name
                                + "' (expected nn2opt, tabu, aco or external)");
}

}  // namespace svrp::solvers
