#include "svrp/generator.hpp"

#include "svrp/stochastic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

namespace svrp::generator {

namespace {

constexpr int kCandidatesPerCity = 50;
constexpr int kLloydIterations = 20;

Location clip(Location loc, double extent)
{
    return {std::clamp(loc.x, 0.0, extent), std::clamp(loc.y, 0.0, extent)};
}

Location canonical(Location loc)
{
    return {canonical_real(loc.x), canonical_real(loc.y)};
}

TimeWindow canonical(TimeWindow window)
{
    window.length = canonical_real(window.length);
    window.start = canonical_real(
        stochastic::clamp_window_start(window.start, window.length));
    while (window.start + window.length > kMinutesPerDay && window.start > 0.0)
    {
        // One unit in the last of the nine significant digits.
        auto const step = std::pow(10.0, std::floor(std::log10(window.start)) - 8.0);
        window.start = std::max(0.0, canonical_real(window.start - step));
    }
    return window;
}

std::string default_id(GeneratorConfig const &config)
{
    return "svrp-" + svrp::to_string(config.problem_type) + "-n"
           + std::to_string(config.n_customers) + "-"
           + svrp::to_string(config.depot_config) + "-s"
           + std::to_string(config.seed);
}

}  // namespace

void GeneratorConfig::validate() const
{
    if (n_customers < 1)
        throw std::invalid_argument("n_customers must be >= 1");
    if (max_demand < 1)
        throw std::invalid_argument("max_demand must be >= 1");
    if (num_vehicles && *num_vehicles < 1)
        throw std::invalid_argument("num_vehicles must be >= 1");
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw std::invalid_argument("extent must be > 0");
    if (!(start_time >= 0.0 && start_time < kMinutesPerDay))
        throw std::invalid_argument("start_time must lie in [0, 1440)");
    try
    {
        tw_params.validate();
        stochastic.validate();
    }
    catch (InvariantError const &error)
    {
        throw std::invalid_argument(error.what());
    }
}

Tier parse_tier(std::string const &text)
{
    std::string name;
    for (unsigned char c : text)
        name.push_back(static_cast<char>(std::tolower(c)));
    if (name == "small")
        return Tier::Small;
    if (name == "medium")
        return Tier::Medium;
    if (name == "large")
        return Tier::Large;
    throw std::invalid_argument("unknown tier '" + text + "'");
}

std::string to_string(Tier tier)
{
    switch (tier)
    {
    case Tier::Small:
        return "small";
    case Tier::Medium:
        return "medium";
    case Tier::Large:
        return "large";
    }
    return "medium";
}

GeneratorConfig apply_tier(GeneratorConfig config, Tier tier)
{
    auto const n = config.n_customers;
    switch (tier)
    {
    case Tier::Small:
        if (n < 50 || n > 100)
            throw std::invalid_argument("small tier covers 50-100 customers");
        config.stochastic.sigma_base = 0.2;
        break;
    case Tier::Medium:
        if (n < 100 || n > 300)
            throw std::invalid_argument("medium tier covers 100-300 customers");
        break;
    case Tier::Large:
        if (n < 300)
            throw std::invalid_argument("large tier starts at 300 customers");
        config.stochastic.sigma_base = 0.4;
        config.tw_params.w_max
            = std::max(config.tw_params.w_min, config.tw_params.w_max / 2.0);
        break;
    }
    return config;
}

int city_count(int n_customers)
{
    return std::max(1, n_customers / kCustomersPerCity);
}

CityLayout plan_cities(int n_customers, double extent, RandomStream &rng)
{
    auto const k = static_cast<std::size_t>(city_count(n_customers));

    std::vector<Location> candidates(k * kCandidatesPerCity);
    for (auto &point : candidates)
    {
        point.x = rng.uniform(0.0, extent);
        point.y = rng.uniform(0.0, extent);
    }

    // Farthest-point seeding.
    std::vector<Location> centers;
    centers.reserve(k);
    auto const first = rng.uniform_int(0, candidates.size() - 1);
    centers.push_back(candidates[first]);

    std::vector<double> nearest(candidates.size());
    for (std::size_t i = 0; i != candidates.size(); ++i)
        nearest[i] = euclidean_distance(candidates[i], centers[0]);

    while (centers.size() < k)
    {
        auto const far = std::distance(
            nearest.begin(), std::max_element(nearest.begin(), nearest.end()));
        centers.push_back(candidates[far]);
        for (std::size_t i = 0; i != candidates.size(); ++i)
            nearest[i] = std::min(
                nearest[i], euclidean_distance(candidates[i], centers.back()));
    }

    // Lloyd iterations.
    std::vector<Location> sums(k);
    std::vector<std::size_t> counts(k);
    for (int iter = 0; iter != kLloydIterations && k > 1; ++iter)
    {
        std::fill(sums.begin(), sums.end(), Location{});
        std::fill(counts.begin(), counts.end(), 0);
        for (auto const &point : candidates)
        {
            std::size_t best = 0;
            auto best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c != k; ++c)
            {
                auto const dist = euclidean_distance(point, centers[c]);
                if (dist < best_dist)
                {
                    best_dist = dist;
                    best = c;
                }
            }
            sums[best].x += point.x;
            sums[best].y += point.y;
            ++counts[best];
        }
        for (std::size_t c = 0; c != k; ++c)
            if (counts[c] > 0)
                centers[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
    }

    CityLayout layout;
    layout.city_sigma = extent / (4.0 * std::sqrt(static_cast<double>(k)));
    for (auto &center : centers)
        layout.centers.push_back(canonical(clip(center, extent)));

    auto min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a != k; ++a)
        for (std::size_t b = a + 1; b != k; ++b)
            min_separation = std::min(
                min_separation,
                euclidean_distance(layout.centers[a], layout.centers[b]));

    // Shrink the scatter rather than fail when centers end up too close.
    if (min_separation < 2.0 * layout.city_sigma)
        layout.city_sigma = std::max(min_separation / 2.0, 1e-6);

    return layout;
}

std::vector<Location> sample_customers(CityLayout const &layout,
                                       int n,
                                       double extent,
                                       RandomStream &rng)
{
    std::vector<Location> locations;
    if (n <= 0 || layout.centers.empty())
        return locations;

    locations.reserve(n);
    for (int i = 0; i != n; ++i)
    {
        auto const &center = layout.centers[i % layout.centers.size()];
        Location point;
        point.x = rng.normal(center.x, layout.city_sigma);
        point.y = rng.normal(center.y, layout.city_sigma);
        locations.push_back(canonical(clip(point, extent)));
    }
    return locations;
}

FleetSpec size_fleet(long total_demand, int num_vehicles)
{
    auto const capacity = (total_demand + num_vehicles - 1) / num_vehicles;
    return {num_vehicles, static_cast<int>(std::max(1L, capacity))};
}

DemandAssignment assign_demands_and_fleet(int n,
                                          int max_demand,
                                          int num_vehicles,
                                          RandomStream &rng)
{
    DemandAssignment result;
    result.demands.reserve(n);
    for (int i = 0; i != n; ++i)
        result.demands.push_back(
            static_cast<int>(rng.uniform_int(1, max_demand)));

    auto const total
        = std::accumulate(result.demands.begin(), result.demands.end(), 0L);
    result.fleet = size_fleet(total, num_vehicles);
    return result;
}

void assign_profiles_and_windows(std::vector<Customer> &customers,
                                 TimeWindowParams const &params,
                                 RandomStream &rng)
{
    for (auto &customer : customers)
    {
        customer.profile = rng.bernoulli(params.residential_fraction)
                               ? Profile::Residential
                               : Profile::Commercial;
        customer.window = canonical(
            stochastic::sample_time_window(customer.profile, params, rng));
        customer.has_window = true;
    }
}

std::vector<Location> place_depots(DepotConfig config,
                                   CityLayout const &layout,
                                   double extent,
                                   RandomStream &rng)
{
    auto uniform_point = [&] {
        Location point;
        point.x = rng.uniform(0.0, extent);
        point.y = rng.uniform(0.0, extent);
        return canonical(point);
    };

    std::vector<Location> depots;
    switch (config)
    {
    case DepotConfig::Single:
        depots.push_back(uniform_point());
        break;
    case DepotConfig::DepotsEqualCity:
        depots = layout.centers;
        break;
    case DepotConfig::MultiRandom:
        for (std::size_t i = 0; i != std::max<std::size_t>(1, layout.centers.size()); ++i)
            depots.push_back(uniform_point());
        break;
    }
    return depots;
}

std::vector<long> window_demand_histogram(Instance const &instance)
{
    auto const bins = static_cast<std::size_t>(kMinutesPerDay / kHistogramBinMinutes);
    std::vector<long> load(bins, 0);
    for (auto const &customer : instance.customers)
    {
        if (!customer.has_window)
            continue;
        auto const &window = customer.window;
        for (std::size_t b = 0; b != bins; ++b)
        {
            auto const lo = kHistogramBinMinutes * b;
            auto const hi = lo + kHistogramBinMinutes;
            if (window.start < hi && window.end() > lo)
                load[b] += customer.demand;
        }
    }
    return load;
}

ValidationVerdict validate_instance(Instance const &instance)
{
    ValidationVerdict verdict;
    try
    {
        instance.check_invariants();
    }
    catch (InvariantError const &error)
    {
        verdict.feasible = false;
        verdict.reason = error.what();
        return verdict;
    }

    verdict.total_capacity = static_cast<long>(instance.fleet.num_vehicles)
                             * instance.fleet.capacity;
    verdict.total_demand = instance.total_demand();

    if (instance.problem_type == ProblemType::TWVRP)
    {
        auto const load = window_demand_histogram(instance);
        auto const peak = std::max_element(load.begin(), load.end());
        verdict.peak_bin = static_cast<int>(std::distance(load.begin(), peak));
        verdict.peak_load = *peak;
    }

    if (verdict.total_capacity < verdict.total_demand)
    {
        verdict.feasible = false;
        verdict.reason = "fleet capacity " + std::to_string(verdict.total_capacity)
                         + " is below total demand "
                         + std::to_string(verdict.total_demand);
    }
    else if (verdict.total_capacity < verdict.peak_load)
    {
        verdict.feasible = false;
        verdict.reason = "peak window demand " + std::to_string(verdict.peak_load)
                         + " in bin " + std::to_string(verdict.peak_bin)
                         + " exceeds fleet capacity "
                         + std::to_string(verdict.total_capacity);
    }

    return verdict;
}

Instance generate_instance(GeneratorConfig const &config)
{
    config.validate();

    auto const num_vehicles = config.num_vehicles.value_or(
        (config.n_customers + kCustomersPerVehicle - 1) / kCustomersPerVehicle);

    ValidationVerdict last;
    for (int attempt = 0; attempt != kMaxAttempts; ++attempt)
    {
        auto const seed = attempt == 0
                              ? config.seed
                              : derive_seed(config.seed, "regenerate", attempt);

        RandomStream city_rng(seed, "cities");
        RandomStream customer_rng(seed, "customers");
        RandomStream demand_rng(seed, "demands");
        RandomStream window_rng(seed, "windows");
        RandomStream depot_rng(seed, "depots");

        auto const layout
            = plan_cities(config.n_customers, config.extent, city_rng);
        auto const locations = sample_customers(
            layout, config.n_customers, config.extent, customer_rng);
        auto const demand = assign_demands_and_fleet(
            config.n_customers, config.max_demand, num_vehicles, demand_rng);

        Instance instance;
        instance.id = config.id.empty() ? default_id(config) : config.id;
        instance.problem_type = config.problem_type;
        instance.extent = config.extent;
        instance.depot_config = config.depot_config;
        instance.fleet = demand.fleet;
        instance.stochastic = config.stochastic;
        instance.tw_params = config.tw_params;
        instance.start_time = config.start_time;
        instance.seed = config.seed;

        instance.customers.resize(config.n_customers);
        for (int i = 0; i != config.n_customers; ++i)
        {
            auto &customer = instance.customers[i];
            customer.id = i + 1;
            customer.location = locations[i];
            customer.demand = demand.demands[i];
        }

        if (config.problem_type == ProblemType::TWVRP)
            assign_profiles_and_windows(
                instance.customers, config.tw_params, window_rng);

        instance.depots = place_depots(
            config.depot_config, layout, config.extent, depot_rng);

        last = validate_instance(instance);
        if (last.feasible)
            return instance;
    }

    throw GenerationError("no feasible instance after "
                          + std::to_string(kMaxAttempts)
                          + " attempts: " + last.reason);
}

}  // namespace svrp::generator
