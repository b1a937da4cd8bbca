#include "svrp/random.hpp"

#include <cmath>
#include <numbers>

namespace svrp {

std::uint64_t hash_label(std::string_view label)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : label)
    {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t mix64(std::uint64_t value)
{
    value += 0x9e3779b97f4a7c15ULL;
    value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
    value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
    return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed,
                          std::string_view label,
                          std::uint64_t entity,
                          std::uint64_t realization)
{
    auto state = mix64(seed);
    state = mix64(state ^ hash_label(label));
    state = mix64(state ^ entity);
    return mix64(state ^ realization);
}

RandomStream::RandomStream(std::uint64_t seed,
                           std::string_view label,
                           std::uint64_t entity,
                           std::uint64_t realization)
    : seed_(derive_seed(seed, label, entity, realization)), engine_(seed_)
{
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double low, double high)
{
    return low + (high - low) * uniform();
}

std::int64_t RandomStream::uniform_int(std::int64_t low, std::int64_t high)
{
    auto const span = static_cast<std::uint64_t>(high - low) + 1;
    if (span == 0)  // full 64-bit range
        return static_cast<std::int64_t>(engine_());

    auto const limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do
        draw = engine_();
    while (draw >= limit);
    return low + static_cast<std::int64_t>(draw % span);
}

double RandomStream::normal(double mean, double sd)
{
    auto const u1 = 1.0 - uniform();  // (0, 1]
    auto const u2 = uniform();
    auto const radius = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * radius * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::lognormal(double mu, double sigma)
{
    return std::exp(normal(mu, sigma));
}

std::uint64_t RandomStream::poisson(double lambda)
{
    if (!(lambda > 0.0))
        return 0;

    std::uint64_t total = 0;
    while (lambda > 0.0)
    {
        auto const chunk = std::min(lambda, 500.0);
        lambda -= chunk;

        auto const u = uniform();
        auto p = std::exp(-chunk);
        auto cdf = p;
        std::uint64_t k = 0;
        while (u >= cdf && p > 0.0)
        {
            ++k;
            p *= chunk / static_cast<double>(k);
            cdf += p;
        }
        total += k;
    }
    return total;
}

}  // namespace svrp
