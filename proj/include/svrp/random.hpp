#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace svrp {

// 64-bit FNV-1a over the label bytes.
std::uint64_t hash_label(std::string_view label);

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t value);

// Combines (seed, label, entity, realization) into an independent stream
// seed. Changing any component yields an unrelated stream.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::string_view label,
                          std::uint64_t entity = 0,
                          std::uint64_t realization = 0);

/**
 * Seeded random stream with platform-independent output.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. The distribution transforms are implemented here rather than
 * taken from <random>, whose distributions are implementation-defined.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed,
                          std::string_view label = "default",
                          std::uint64_t entity = 0,
                          std::uint64_t realization = 0);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double low, double high);

    // Uniform integer on [low, high], unbiased.
    std::int64_t uniform_int(std::int64_t low, std::int64_t high);

    // Box-Muller; consumes exactly two uniforms per call.
    double normal(double mean = 0.0, double sd = 1.0);

    // exp(N(mu, sigma^2)): mu and sigma parameterize the underlying normal.
    double lognormal(double mu, double sigma);

    // Inversion by sequential search; rates above 500 are split into
    // independent chunks to avoid underflow of exp(-lambda).
    std::uint64_t poisson(double lambda);

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t stream_seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace svrp
