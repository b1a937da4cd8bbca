#include "svrp/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svrp::stochastic {

double gaussian_density(double x, double mean, double sd)
{
    auto const z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double peak_kernel(double t_hours, StochasticParams const &params)
{
    return gaussian_density(t_hours, params.mu_morning, params.sigma_peak)
           + gaussian_density(t_hours, params.mu_evening, params.sigma_peak);
}

double distance_factor(double distance_km, StochasticParams const &params)
{
    if (!(distance_km >= 0.0))
        throw std::invalid_argument("distance_factor: negative distance");
    return -std::expm1(-distance_km / params.lambda_dist);
}

double time_factor(double t_minutes, StochasticParams const &params)
{
    return params.beta_base
           + params.gamma_amp * peak_kernel(t_minutes / 60.0, params);
}

double congestion_factor(double distance_km,
                         double t_minutes,
                         StochasticParams const &params)
{
    return params.alpha * time_factor(t_minutes, params)
           * distance_factor(distance_km, params);
}

LogNormalParams delay_multiplier_params(double t_minutes,
                                        StochasticParams const &params)
{
    auto const kernel = peak_kernel(t_minutes / 60.0, params);
    return {params.mu_base + params.delta * kernel,
            params.sigma_base + params.epsilon * kernel};
}

double expected_delay_multiplier(double t_minutes,
                                 StochasticParams const &params)
{
    auto const [mu, sigma] = delay_multiplier_params(t_minutes, params);
    return std::exp(mu + 0.5 * sigma * sigma);
}

double sample_delay_multiplier(double t_minutes,
                               StochasticParams const &params,
                               RandomStream &rng)
{
    auto const [mu, sigma] = delay_multiplier_params(t_minutes, params);
    return rng.lognormal(mu, sigma);
}

double accident_rate(double t_minutes, StochasticParams const &params)
{
    return params.lambda_scale
           * gaussian_density(t_minutes / 60.0, params.mu_night, params.sigma_acc);
}

AccidentSample sample_accidents(double t_minutes,
                                StochasticParams const &params,
                                RandomStream &rng)
{
    AccidentSample sample;
    sample.count = rng.poisson(accident_rate(t_minutes, params));
    for (std::uint64_t i = 0; i != sample.count; ++i)
        sample.delay_minutes += 60.0
                                * rng.uniform(params.accident_delay_min,
                                              params.accident_delay_max);
    return sample;
}

double sample_accident_delay(double t_minutes,
                             StochasticParams const &params,
                             RandomStream &rng)
{
    return sample_accidents(t_minutes, params, rng).delay_minutes;
}

TravelSample travel_time_for_distance(double distance_km,
                                      double t_minutes,
                                      StochasticParams const &params,
                                      RandomStream &rng)
{
    TravelSample sample;
    sample.base = 60.0 * distance_km / params.speed_v;
    auto const multiplier = sample_delay_multiplier(t_minutes, params, rng);
    sample.congestion
        = congestion_factor(distance_km, t_minutes, params) * multiplier;
    sample.accident_delay = sample_accident_delay(t_minutes, params, rng);
    sample.total = sample.base + sample.congestion + sample.accident_delay;
    return sample;
}

TravelSample travel_time(Location const &a,
                         Location const &b,
                         double t_minutes,
                         StochasticParams const &params,
                         RandomStream &rng)
{
    return travel_time_for_distance(
        euclidean_distance(a, b), t_minutes, params, rng);
}

double expected_travel_time_for_distance(double distance_km,
                                         double t_minutes,
                                         StochasticParams const &params)
{
    auto const base = 60.0 * distance_km / params.speed_v;
    auto const congestion = congestion_factor(distance_km, t_minutes, params);
    if (congestion == 0.0)
        return base;
    return base + congestion * expected_delay_multiplier(t_minutes, params);
}

double expected_travel_time(Location const &a,
                            Location const &b,
                            double t_minutes,
                            StochasticParams const &params)
{
    return expected_travel_time_for_distance(
        euclidean_distance(a, b), t_minutes, params);
}

double minute_of_day(double clock_minutes)
{
    auto wrapped = std::fmod(clock_minutes, kMinutesPerDay);
    if (wrapped < 0.0)
        wrapped += kMinutesPerDay;
    return wrapped >= kMinutesPerDay ? 0.0 : wrapped;
}

double clamp_window_start(double raw_start, double length)
{
    return std::max(0.0, std::min(raw_start, kMinutesPerDay - length));
}

TimeWindow sample_time_window(Profile profile,
                              TimeWindowParams const &params,
                              RandomStream &rng)
{
    double raw_start;
    double length;
    if (profile == Profile::Residential)
    {
        auto const morning = rng.bernoulli(0.5);
        raw_start = morning
                        ? rng.normal(params.res_morning_mean,
                                     params.res_morning_sigma)
                        : rng.normal(params.res_evening_mean,
                                     params.res_evening_sigma);
        length = rng.uniform(params.w_min, params.w_max);
    }
    else
    {
        raw_start = rng.normal(params.com_mean, params.com_sigma);
        length = rng.uniform(params.w_min, params.w_max_com);
    }

    return {clamp_window_start(raw_start, length), length};
}

}  // namespace svrp::stochastic
