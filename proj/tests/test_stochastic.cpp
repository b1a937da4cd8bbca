#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "svrp/stochastic.hpp"

#include <algorithm>

using namespace svrp;
using namespace svrp::stochastic;

namespace {

StochasticParams const defaults;

// Mode of a 1-minute histogram smoothed with a Gaussian of width h.
double histogram_mode(std::vector<double> const &samples, double lo, double hi, double h)
{
    std::vector<double> bins(1440, 0.0);
    for (double s : samples)
        bins[std::min<std::size_t>(1439, static_cast<std::size_t>(s))] += 1.0;
    double best = lo, best_density = -1.0;
    for (int x = static_cast<int>(lo); x < static_cast<int>(hi); ++x)
    {
        double density = 0.0;
        for (int b = 0; b != 1440; ++b)
            density += bins[b] * std::exp(-0.5 * (b + 0.5 - x) * (b + 0.5 - x) / (h * h));
        if (density > best_density)
        {
            best_density = density;
            best = x;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("peak kernel closed forms")
{
    auto const single_peak = 1.0 / (1.5 * std::sqrt(2.0 * M_PI));
    CHECK(peak_kernel(8.0, defaults) == doctest::Approx(0.26596).epsilon(1e-4));
    CHECK(peak_kernel(8.0, defaults)
          == doctest::Approx(single_peak + oracles::gaussian_pdf(8, 17, 1.5)).epsilon(1e-12));
    CHECK(peak_kernel(17.0, defaults) == doctest::Approx(peak_kernel(8.0, defaults)));
    CHECK(peak_kernel(12.5, defaults) < peak_kernel(8.0, defaults));
}

TEST_CASE("distance factor closed forms")
{
    CHECK(distance_factor(0.0, defaults) == 0.0);
    CHECK(distance_factor(50.0, defaults) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(distance_factor(500.0, defaults) == doctest::Approx(0.99995).epsilon(1e-5));
    CHECK_THROWS_AS(distance_factor(-1.0, defaults), std::invalid_argument);
}

TEST_CASE("congestion factor")
{
    CHECK(congestion_factor(0.0, 480.0, defaults) == 0.0);
    CHECK(congestion_factor(50.0, 480.0, defaults) == doctest::Approx(14.728).epsilon(1e-4));
    CHECK(congestion_factor(50.0, 480.0, defaults) > congestion_factor(50.0, 180.0, defaults));
}

TEST_CASE("log-normal delay multiplier statistics")
{
    auto params = defaults;
    params.delta = 0.0;
    params.epsilon = 0.0;
    params.mu_base = 0.0;
    params.sigma_base = 0.3;

    RandomStream rng(21, "multiplier");
    std::vector<double> draws;
    for (int i = 0; i != 100000; ++i)
        draws.push_back(sample_delay_multiplier(600.0, params, rng));
    CHECK(std::all_of(draws.begin(), draws.end(), [](double r) { return r > 0.0; }));
    auto sorted = draws;
    std::nth_element(sorted.begin(), sorted.begin() + 50000, sorted.end());
    CHECK(std::abs(sorted[50000] - 1.0) <= 0.02);
    CHECK(std::abs(oracles::mean(draws) - std::exp(0.045)) <= 0.02);

    auto mean_at = [&](double t) {
        RandomStream stream(22, "multiplier", static_cast<std::uint64_t>(t));
        double sum = 0.0;
        for (int i = 0; i != 100000; ++i)
            sum += sample_delay_multiplier(t, defaults, stream);
        return sum / 100000;
    };
    CHECK(mean_at(480.0) > mean_at(180.0));
}

TEST_CASE("accident sampling")
{
    auto quiet = defaults;
    quiet.lambda_scale = 0.0;
    RandomStream rng(31, "accidents");
    for (int i = 0; i != 1000; ++i)
        CHECK(sample_accident_delay(1260.0, quiet, rng) == 0.0);

    constexpr int draws = 1000000;
    std::uint64_t total = 0;
    for (int i = 0; i != draws; ++i)
        total += sample_accidents(1260.0, defaults, rng).count;
    auto const expected = 0.1 / (2.0 * std::sqrt(2.0 * M_PI));
    CHECK(accident_rate(1260.0, defaults) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(static_cast<double>(total) / draws - expected) <= 0.05 * expected);

    auto busy = defaults;
    busy.lambda_scale = 5.0;
    std::vector<double> single_delays;
    while (single_delays.size() < 100000)
    {
        auto const sample = sample_accidents(1260.0, busy, rng);
        if (sample.count == 1)
            single_delays.push_back(sample.delay_minutes);
    }
    CHECK(std::abs(oracles::mean(single_delays) - 75.0) <= 2.0);
    CHECK(*std::min_element(single_delays.begin(), single_delays.end()) >= 30.0);
    CHECK(*std::max_element(single_delays.begin(), single_delays.end()) <= 120.0);
}

TEST_CASE("accident intensity peaks at night")
{
    std::vector<std::uint64_t> bins(24, 0);
    RandomStream rng(32, "accident-hist");
    for (int i = 0; i != 1000000; ++i)
    {
        auto const t = rng.uniform(0.0, 1440.0);
        bins[static_cast<std::size_t>(t / 60.0)] += sample_accidents(t, defaults, rng).count;
    }
    auto const peak = std::max_element(bins.begin(), bins.end()) - bins.begin();
    CHECK(std::abs(peak - 21) <= 1);
}

TEST_CASE("travel time examples")
{
    RandomStream rng(41, "travel");
    auto const same = travel_time({5, 5}, {5, 5}, 480.0, defaults, rng);
    CHECK(same.base == 0.0);
    CHECK(same.congestion == 0.0);
    CHECK(same.total == same.accident_delay);

    auto const flat = StochasticParams::deterministic();
    CHECK(travel_time({0, 0}, {20, 0}, 480.0, flat, rng).total == 30.0);
    CHECK(travel_time_for_distance(20.0, 900.0, flat, rng).total == 30.0);

    RandomStream a(41, "travel", 7, 3);
    RandomStream b(41, "travel", 7, 3);
    CHECK(travel_time_for_distance(50, 480, defaults, a).total
          == travel_time_for_distance(50, 480, defaults, b).total);
}

TEST_CASE("travel samples are non-negative and additive")
{
    RandomStream rng(42, "travel-props");
    for (int i = 0; i != 100000; ++i)
    {
        auto const d = rng.uniform(0.0, 150.0);
        auto const t = rng.uniform(0.0, 1440.0);
        auto const s = travel_time_for_distance(d, t, defaults, rng);
        CHECK(s.base >= 0.0);
        CHECK(s.congestion >= 0.0);
        CHECK(s.accident_delay >= 0.0);
        CHECK(s.total == s.base + s.congestion + s.accident_delay);
    }
}

TEST_CASE("mean travel time is higher at the morning peak")
{
    for (double d : {10.0, 50.0, 120.0})
    {
        auto mean_at = [&](double t) {
            double sum = 0.0;
            for (int r = 0; r != 10000; ++r)
            {
                RandomStream rng(43, "peak", static_cast<std::uint64_t>(t), r);
                sum += travel_time_for_distance(d, t, defaults, rng).total;
            }
            return sum / 10000;
        };
        CHECK(mean_at(480.0) > mean_at(180.0));
    }
}

TEST_CASE("expected travel time")
{
    CHECK(expected_travel_time({3, 3}, {3, 3}, 480.0, defaults) == 0.0);
    auto flat = defaults;
    flat.alpha = 0.0;
    CHECK(expected_travel_time({0, 0}, {50, 0}, 480.0, flat) == doctest::Approx(75.0));

    auto const [mu, sigma] = delay_multiplier_params(480.0, defaults);
    auto const closed = 75.0 + 14.728 * std::exp(mu + sigma * sigma / 2.0);
    auto const expected = expected_travel_time_for_distance(50.0, 480.0, defaults);
    CHECK(expected == doctest::Approx(closed).epsilon(1e-4));

    auto no_accidents = defaults;
    no_accidents.lambda_scale = 0.0;
    RandomStream rng(44, "monte-carlo");
    double sum = 0.0;
    constexpr int samples = 1000000;
    for (int i = 0; i != samples; ++i)
        sum += travel_time_for_distance(50.0, 480.0, no_accidents, rng).total;
    CHECK(std::abs(sum / samples - expected) <= 0.005 * expected);
}

TEST_CASE("time window clamp")
{
    CHECK(clamp_window_start(1400.0, 120.0) == 1320.0);
    CHECK(clamp_window_start(-30.0, 60.0) == 0.0);
    CHECK(clamp_window_start(600.0, 60.0) == 600.0);
}

TEST_CASE("sampled windows stay inside the day")
{
    TimeWindowParams const params;
    RandomStream rng(51, "window-bounds");
    for (int i = 0; i != 1000000; ++i)
    {
        auto const profile = i % 2 ? Profile::Commercial : Profile::Residential;
        auto const w = sample_time_window(profile, params, rng);
        CHECK(w.start >= 0.0);
        CHECK(w.end() <= 1440.0);
        if (profile == Profile::Commercial)
            CHECK(w.length <= params.w_max_com);
        else
            CHECK((w.length >= params.w_min && w.length <= params.w_max));
    }
}

TEST_CASE("residential windows are bimodal with equal mass")
{
    TimeWindowParams const params;
    RandomStream rng(52, "residential");
    std::vector<double> starts;
    for (int i = 0; i != 100000; ++i)
        starts.push_back(sample_time_window(Profile::Residential, params, rng).start);
    CHECK(std::abs(histogram_mode(starts, 0, 810, 20.0) - 480.0) <= 15.0);
    CHECK(std::abs(histogram_mode(starts, 810, 1440, 20.0) - 1140.0) <= 15.0);
    auto const morning = std::count_if(starts.begin(), starts.end(),
                                       [](double s) { return s < 810.0; });
    CHECK(std::abs(static_cast<double>(morning) / 100000 - 0.5) <= 0.02);
}

TEST_CASE("commercial window start moments")
{
    TimeWindowParams const params;
    RandomStream rng(53, "commercial");
    std::vector<double> starts;
    for (int i = 0; i != 100000; ++i)
        starts.push_back(sample_time_window(Profile::Commercial, params, rng).start);
    CHECK(std::abs(oracles::mean(starts) - 780.0) <= 3.0);
    CHECK(std::abs(std::sqrt(oracles::sample_variance(starts)) - 60.0) <= 3.0);
}
