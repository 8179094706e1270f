#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mdskit/errors.hpp"
#include "mdskit/generators.hpp"
#include "mdskit/oracle.hpp"
#include "mdskit/transforms.hpp"
#include "testutil.hpp"

using namespace mdskit;

TEST_CASE("brute force mds on small named instances") {
    CHECK(brute_force_mds(gen_path(2)).size() == 1);
    CHECK(brute_force_mds(gen_path(4)).size() == 2);
    CHECK(brute_force_mds(gen_cycle(4)).size() == 2);
}

TEST_CASE("partition oracle on small named instances") {
    CHECK(partition_oracle(gen_path(3)).size() == 1);
    CHECK(partition_oracle(gen_path(7)).size() == 3);
    CHECK(partition_oracle(testutil::star(5)).size() == 1);
}

TEST_CASE("oracle caps") {
    CHECK_THROWS_AS(brute_force_mds(gen_path(8)), LimitError);
    OracleLimits tiny{7, 4};
    CHECK_THROWS_AS(partition_oracle(gen_path(8), tiny), LimitError);
}

TEST_CASE("distance-2 brute on small named instances") {
    CHECK(distance2_brute(gen_path(5)).size() == 1);
    CHECK(distance2_brute(gen_path(3)).size() == 1);
    CHECK(distance2_brute(gen_cycle(7)).size() == 2);
}

TEST_CASE("oracles agree on all labeled graphs up to 5 vertices") {
    for (int n = 1; n <= 5; ++n)
        for (long long mask = 0; mask < testutil::labeled_count(n); ++mask) {
            Graph g = testutil::labeled(n, mask);
            auto brute = brute_force_mds(g);
            auto part = partition_oracle(g);
            CHECK(validate_mds(g, brute).valid);
            CHECK(validate_mds(g, part).valid);
            CHECK(brute.size() == part.size());
        }
}

TEST_CASE("oracles agree on random graphs with 6 and 7 vertices") {
    std::mt19937_64 rng(2);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 6 + (int)(rng() % 2);
        Graph g = gen_random(n, 0.1 + 0.1 * (rng() % 8), rng());
        auto brute = brute_force_mds(g);
        auto part = partition_oracle(g);
        CHECK(validate_mds(g, part).valid);
        CHECK(brute.size() == part.size());
    }
}

TEST_CASE("distance-2 on the incidence graph equals the mds optimum") {
    std::mt19937_64 rng(8);
    OracleLimits lim{10, 18};  // I(G) of a 5-vertex graph has up to 15 vertices
    for (int n = 1; n <= 4; ++n)
        for (long long mask = 0; mask < testutil::labeled_count(n); ++mask) {
            Graph g = testutil::labeled(n, mask);
            CHECK(distance2_brute(incidence_graph(g).graph, lim).size() ==
                  (size_t)brute_force_mds(g).size());
        }
    for (int iter = 0; iter < 30; ++iter) {
        Graph g = gen_random(5, 0.2 + 0.15 * (rng() % 5), rng());
        CHECK(distance2_brute(incidence_graph(g).graph, lim).size() ==
              (size_t)brute_force_mds(g).size());
    }
}

TEST_CASE("isolated vertex preprocessing") {
    Graph g = testutil::from_edges(4, {{1, 2}});
    auto split = split_isolated(g);
    CHECK(split.isolated == std::vector<int>{0, 3});
    CHECK(split.rest.n() == 2);
    auto sol = partition_oracle(g);
    CHECK(validate_mds(g, sol).valid);
    CHECK(sol.size() == 3);  // two isolated vertices plus one for the edge
}
