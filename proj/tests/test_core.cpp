#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

#include "svrp/random.hpp"

using namespace svrp;

TEST_CASE("euclidean distance examples")
{
    CHECK(euclidean_distance({0, 0}, {0, 0}) == 0.0);
    CHECK(euclidean_distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(euclidean_distance({1, 1}, {4, 5}) == doctest::Approx(5.0));
}

TEST_CASE("distance is symmetric and obeys the triangle inequality")
{
    RandomStream rng(1, "points");
    for (int i = 0; i != 10000; ++i)
    {
        Location a{rng.uniform(0, 100), rng.uniform(0, 100)};
        Location b{rng.uniform(0, 100), rng.uniform(0, 100)};
        Location c{rng.uniform(0, 100), rng.uniform(0, 100)};
        CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
        CHECK(euclidean_distance(a, c)
              <= euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
    }
}

TEST_CASE("time window validity")
{
    CHECK(TimeWindow{600, 60}.valid());
    CHECK(TimeWindow{1380, 60}.valid());
    CHECK_FALSE(TimeWindow{1400, 60}.valid());
    CHECK_FALSE(TimeWindow{-1, 60}.valid());
    CHECK_FALSE(TimeWindow{600, 0}.valid());
}

TEST_CASE("enum names round trip and accept aliases")
{
    for (auto t : {ProblemType::CVRP, ProblemType::TWVRP})
        CHECK(parse_problem_type(to_string(t)) == t);
    for (auto d : {DepotConfig::Single, DepotConfig::MultiRandom, DepotConfig::DepotsEqualCity})
        CHECK(parse_depot_config(to_string(d)) == d);
    for (auto p : {Profile::Residential, Profile::Commercial})
        CHECK(parse_profile(to_string(p)) == p);
    CHECK(parse_problem_type("twvrp") == ProblemType::TWVRP);
    CHECK(parse_depot_config("city") == DepotConfig::DepotsEqualCity);
    CHECK(parse_depot_config("multi") == DepotConfig::MultiRandom);
    CHECK_THROWS_AS(parse_problem_type("vrp"), std::invalid_argument);
}

TEST_CASE("instance invariants")
{
    auto instance = fixtures::make_instance({{0, 0}}, {{{1, 0}, 2}, {{2, 0}, 3}}, 5, 1);
    CHECK(instance.total_demand() == 5);
    CHECK(instance.customer_node(1) == 1);
    CHECK(instance.node_location(2) == Location{2, 0});

    auto broken = instance;
    broken.customers[0].demand = 0;
    CHECK_THROWS_AS(broken.check_invariants(), InvariantError);

    broken = instance;
    broken.customers[1].id = 5;
    CHECK_THROWS_AS(broken.check_invariants(), InvariantError);

    broken = instance;
    broken.depots.clear();
    CHECK_THROWS_AS(broken.check_invariants(), InvariantError);
}

TEST_CASE("coverage check finds missing and repeated customers")
{
    auto const instance = fixtures::make_instance(
        {{0, 0}}, {{{1, 0}}, {{2, 0}}, {{3, 0}}}, 2, 2);

    Solution good{{{0, {1, 2}}, {0, {3}}}};
    CHECK(check_coverage(good, instance).ok);
    CHECK(check_solution(good, instance).ok);

    Solution missing{{{0, {1, 2}}}};
    CHECK_FALSE(check_coverage(missing, instance).ok);

    Solution twice{{{0, {1, 2}}, {0, {2, 3}}}};
    CHECK_FALSE(check_coverage(twice, instance).ok);

    Solution over{{{0, {1, 2, 3}}}};
    CHECK(check_coverage(over, instance).ok);
    CHECK_FALSE(check_solution(over, instance).ok);

    Solution bad_depot{{{3, {1, 2}}, {0, {3}}}};
    CHECK_FALSE(check_solution(bad_depot, instance).ok);
}

TEST_CASE("canonical reals are fixed points")
{
    RandomStream rng(3, "reals");
    for (int i = 0; i != 10000; ++i)
    {
        auto const x = canonical_real(rng.uniform(-1e4, 1e4));
        CHECK(canonical_real(x) == x);
    }
    CHECK(canonical_real(1.0 / 3.0) == 0.333333333);
}
