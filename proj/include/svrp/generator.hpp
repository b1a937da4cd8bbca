#pragma once

#include "svrp/core.hpp"
#include "svrp/random.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svrp::generator {

// Raised when no feasible instance is found within the attempt budget.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxAttempts = 100;
inline constexpr int kCustomersPerCity = 50;
inline constexpr int kCustomersPerVehicle = 25;
inline constexpr double kHistogramBinMinutes = 60.0;

// Sizes used when building datasets and when evaluating solvers.
inline constexpr std::array<int, 5> kDatasetSizes{10, 20, 100, 500, 1000};
inline constexpr std::array<int, 7> kEvaluationSizes{
    10, 20, 50, 100, 200, 500, 1000};

struct GeneratorConfig {
    int n_customers = 10;
    ProblemType problem_type = ProblemType::CVRP;
    DepotConfig depot_config = DepotConfig::Single;
    std::optional<int> num_vehicles;  // empty: ceil(n / 25)
    int max_demand = 10;
    double extent = 100.0;
    double start_time = 480.0;
    TimeWindowParams tw_params;
    StochasticParams stochastic;
    std::uint64_t seed = 0;
    std::string id;  // empty: derived from the other fields

    void validate() const;
};

enum class Tier { Small, Medium, Large };

Tier parse_tier(std::string const &text);
std::string to_string(Tier tier);

// Applies the noise/window adjustments of a size tier. Throws
// std::invalid_argument if n_customers is outside the tier's range
// (small 50-100, medium 100-300, large 300+).
GeneratorConfig apply_tier(GeneratorConfig config, Tier tier);

struct CityLayout {
    std::vector<Location> centers;
    double city_sigma = 0.0;
};

int city_count(int n_customers);

// Farthest-point seeding over uniform candidates followed by Lloyd
// iterations; returns well separated centers inside the extent.
CityLayout plan_cities(int n_customers, double extent, RandomStream &rng);

// Round-robin over cities, isotropic Gaussian around each center, clipped
// to [0, extent]^2.
std::vector<Location> sample_customers(CityLayout const &layout,
                                       int n,
                                       double extent,
                                       RandomStream &rng);

struct DemandAssignment {
    std::vector<int> demands;
    FleetSpec fleet;
};

// capacity = ceil(sum / num_vehicles).
FleetSpec size_fleet(long total_demand, int num_vehicles);

DemandAssignment assign_demands_and_fleet(int n,
                                          int max_demand,
                                          int num_vehicles,
                                          RandomStream &rng);

// Independent residential/commercial split, then a window by profile.
void assign_profiles_and_windows(std::vector<Customer> &customers,
                                 TimeWindowParams const &params,
                                 RandomStream &rng);

std::vector<Location> place_depots(DepotConfig config,
                                   CityLayout const &layout,
                                   double extent,
                                   RandomStream &rng);

struct ValidationVerdict {
    bool feasible = true;
    std::string reason;
    long total_capacity = 0;
    long total_demand = 0;
    // TWVRP only: heaviest 60-minute bin and its load.
    int peak_bin = -1;
    long peak_load = 0;
};

// Demand per 60-minute bin; a window adds its full demand to every bin it
// overlaps.
std::vector<long> window_demand_histogram(Instance const &instance);

ValidationVerdict validate_instance(Instance const &instance);

Instance generate_instance(GeneratorConfig const &config);

}  // namespace svrp::generator
