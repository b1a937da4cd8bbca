#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace svrp {

inline constexpr double kMinutesPerDay = 1440.0;

// Thrown when a domain object breaks one of its invariants.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Planar position in kilometers.
struct Location {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(Location const &, Location const &) = default;
};

double euclidean_distance(Location const &a, Location const &b);

// [start, start + length] in minutes-of-day.
struct TimeWindow {
    double start = 0.0;
    double length = 1.0;

    double end() const { return start + length; }
    bool valid() const;

    friend bool operator==(TimeWindow const &, TimeWindow const &) = default;
};

enum class ProblemType { CVRP, TWVRP };
enum class Profile { Residential, Commercial };
enum class DepotConfig { Single, MultiRandom, DepotsEqualCity };

std::string to_string(ProblemType type);
std::string to_string(Profile profile);
std::string to_string(DepotConfig config);

// Parsers accept the canonical names above, case-insensitively. Throw
// std::invalid_argument on anything else.
ProblemType parse_problem_type(std::string const &text);
Profile parse_profile(std::string const &text);
DepotConfig parse_depot_config(std::string const &text);

struct Customer {
    int id = 1;
    Location location;
    int demand = 1;
    bool has_window = false;
    TimeWindow window;
    Profile profile = Profile::Residential;

    friend bool operator==(Customer const &, Customer const &) = default;
};

struct FleetSpec {
    int num_vehicles = 1;
    int capacity = 1;

    friend bool operator==(FleetSpec const &, FleetSpec const &) = default;
};

// Constants of the travel-time model. Peak/accident centers and spreads are
// in hours; alpha is in minutes; speed in km/h.
struct StochasticParams {
    double mu_morning = 8.0;
    double mu_evening = 17.0;
    double sigma_peak = 1.5;
    double lambda_dist = 50.0;
    double mu_base = 0.0;
    double sigma_base = 0.3;
    double delta = 0.1;
    double epsilon = 0.2;
    double mu_night = 21.0;
    double sigma_acc = 2.0;
    double lambda_scale = 0.1;
    double accident_delay_min = 0.5;
    double accident_delay_max = 2.0;
    double alpha = 10.0;
    double beta_base = 1.0;
    double gamma_amp = 5.0;
    double speed_v = 40.0;

    void validate() const;

    // Travel time collapses to distance / speed.
    static StochasticParams deterministic();

    friend bool operator==(StochasticParams const &,
                           StochasticParams const &) = default;
};

// Time-window sampling constants, all in minutes.
struct TimeWindowParams {
    double res_morning_mean = 480.0;
    double res_evening_mean = 1140.0;
    double res_morning_sigma = 90.0;
    double res_evening_sigma = 120.0;
    double com_mean = 780.0;
    double com_sigma = 60.0;
    double w_min = 60.0;
    double w_max = 180.0;
    double w_max_com = 120.0;
    double residential_fraction = 0.6;

    void validate() const;

    friend bool operator==(TimeWindowParams const &,
                           TimeWindowParams const &) = default;
};

struct Instance {
    std::string id;
    ProblemType problem_type = ProblemType::CVRP;
    double extent = 100.0;
    std::vector<Customer> customers;
    std::vector<Location> depots;
    DepotConfig depot_config = DepotConfig::Single;
    FleetSpec fleet;
    StochasticParams stochastic;
    TimeWindowParams tw_params;
    double start_time = 480.0;
    std::uint64_t seed = 0;

    std::size_t num_customers() const { return customers.size(); }
    std::size_t num_nodes() const { return depots.size() + customers.size(); }

    // Node indices: depots first, then customers in id order.
    std::size_t depot_node(std::size_t depot) const { return depot; }
    std::size_t customer_node(int id) const
    {
        return depots.size() + static_cast<std::size_t>(id - 1);
    }
    Location const &node_location(std::size_t node) const;
    Customer const &customer(int id) const { return customers[id - 1]; }

    long total_demand() const;

    // Structural invariants only; fleet feasibility is the generator's
    // validation predicate.
    void check_invariants() const;

    friend bool operator==(Instance const &, Instance const &) = default;
};

struct Route {
    std::size_t depot = 0;
    std::vector<int> customers;

    friend bool operator==(Route const &, Route const &) = default;
};

struct Solution {
    std::vector<Route> routes;
    std::string solver_name;
    double wall_time = 0.0;
    // Set by solvers that could not find a plan meeting every soft
    // constraint (time windows) and return their best compromise.
    bool flagged_infeasible = false;

    friend bool operator==(Solution const &, Solution const &) = default;
};

struct CoverageReport {
    bool ok = true;
    std::string reason;
};

// O(n) check that every customer appears exactly once across all routes.
CoverageReport check_coverage(Solution const &solution,
                              Instance const &instance);

// Coverage, per-route capacity, route count and depot index checks.
CoverageReport check_solution(Solution const &solution,
                              Instance const &instance);

int route_load(Route const &route, Instance const &instance);

// Rounds to 9 significant digits, the precision of the canonical file
// format. Values produced by the generator are passed through this so that
// parse(serialize(x)) == x holds exactly.
double canonical_real(double value);

}  // namespace svrp
