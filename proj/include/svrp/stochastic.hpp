#pragma once

#include "svrp/core.hpp"
#include "svrp/random.hpp"

namespace svrp::stochastic {

// Gaussian density f(x; mean, sd).
double gaussian_density(double x, double mean, double sd);

// Sum of the morning and evening peak densities at t_hours.
double peak_kernel(double t_hours, StochasticParams const &params);

// 1 - exp(-d / lambda_dist). Throws std::invalid_argument for d < 0.
double distance_factor(double distance_km, StochasticParams const &params);

// beta + gamma * peak_kernel(t / 60).
double time_factor(double t_minutes, StochasticParams const &params);

// Deterministic congestion term B in minutes.
double congestion_factor(double distance_km,
                         double t_minutes,
                         StochasticParams const &params);

// Parameters of the normal underlying the delay multiplier at t.
struct LogNormalParams {
    double mu;
    double sigma;
};

LogNormalParams delay_multiplier_params(double t_minutes,
                                        StochasticParams const &params);

// E[R(t)] = exp(mu(t) + sigma(t)^2 / 2).
double expected_delay_multiplier(double t_minutes,
                                 StochasticParams const &params);

double sample_delay_multiplier(double t_minutes,
                               StochasticParams const &params,
                               RandomStream &rng);

// Poisson intensity of accidents per hour at t.
double accident_rate(double t_minutes, StochasticParams const &params);

struct AccidentSample {
    std::uint64_t count = 0;
    double delay_minutes = 0.0;
};

// Compound draw: Poisson count, each accident adding U(min, max) hours.
AccidentSample sample_accidents(double t_minutes,
                                StochasticParams const &params,
                                RandomStream &rng);

double sample_accident_delay(double t_minutes,
                             StochasticParams const &params,
                             RandomStream &rng);

// Components of one realized travel time, in minutes.
struct TravelSample {
    double base = 0.0;
    double congestion = 0.0;
    double accident_delay = 0.0;
    double total = 0.0;
};

// Draw order is fixed: delay multiplier first, then accidents. Every call
// consumes draws regardless of parameter values, so a stream stays aligned
// when constants are changed.
TravelSample travel_time(Location const &a,
                         Location const &b,
                         double t_minutes,
                         StochasticParams const &params,
                         RandomStream &rng);

TravelSample travel_time_for_distance(double distance_km,
                                      double t_minutes,
                                      StochasticParams const &params,
                                      RandomStream &rng);

// A priori planning time: base + B * E[R]; accidents excluded.
double expected_travel_time(Location const &a,
                            Location const &b,
                            double t_minutes,
                            StochasticParams const &params);

double expected_travel_time_for_distance(double distance_km,
                                         double t_minutes,
                                         StochasticParams const &params);

// Wraps any clock value into [0, 1440).
double minute_of_day(double clock_minutes);

// Clamp keeping the window inside the day.
double clamp_window_start(double raw_start, double length);

TimeWindow sample_time_window(Profile profile,
                              TimeWindowParams const &params,
                              RandomStream &rng);

}  // namespace svrp::stochastic
