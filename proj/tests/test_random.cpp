#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include <fstream>
#include <set>
#include <sstream>

using namespace svrp;

TEST_CASE("streams match the recorded golden vectors")
{
    std::ifstream in(SVRP_TEST_DATA "/golden_random.txt");
    REQUIRE(in);
    std::ostringstream golden;
    golden << in.rdbuf();
    auto const actual = oracles::golden_random_vectors();
    auto const values = std::count(actual.begin(), actual.end(), '\n');
    CHECK(values >= 100);
    CHECK(actual == golden.str());
}

TEST_CASE("streams with the same key replay identically")
{
    RandomStream a(9, "travel", 4, 2);
    RandomStream b(9, "travel", 4, 2);
    for (int i = 0; i != 1000; ++i)
        CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("every key component changes the stream")
{
    std::set<std::uint64_t> seeds{derive_seed(1, "a", 0, 0), derive_seed(2, "a", 0, 0),
                                  derive_seed(1, "b", 0, 0), derive_seed(1, "a", 1, 0),
                                  derive_seed(1, "a", 0, 1)};
    CHECK(seeds.size() == 5);
}

TEST_CASE("uniform and integer draws stay in range")
{
    RandomStream rng(5);
    for (int i = 0; i != 100000; ++i)
    {
        auto const u = rng.uniform();
        CHECK((u >= 0.0 && u < 1.0));
        auto const k = rng.uniform_int(-3, 3);
        CHECK((k >= -3 && k <= 3));
    }
}

TEST_CASE("normal and poisson moments")
{
    RandomStream rng(6);
    std::vector<double> normals, counts;
    for (int i = 0; i != 200000; ++i)
        normals.push_back(rng.normal(2.0, 3.0));
    for (int i = 0; i != 20000; ++i)
        counts.push_back(static_cast<double>(rng.poisson(4.0)));
    CHECK(oracles::mean(normals) == doctest::Approx(2.0).epsilon(0.01));
    CHECK(std::sqrt(oracles::sample_variance(normals)) == doctest::Approx(3.0).epsilon(0.01));
    CHECK(oracles::mean(counts) == doctest::Approx(4.0).epsilon(0.02));
    CHECK(oracles::sample_variance(counts) == doctest::Approx(4.0).epsilon(0.05));

    std::vector<double> large;
    for (int i = 0; i != 2000; ++i)
        large.push_back(static_cast<double>(rng.poisson(1200.0)));
    CHECK(oracles::mean(large) == doctest::Approx(1200.0).epsilon(0.005));
    CHECK(rng.poisson(0.0) == 0);
}
