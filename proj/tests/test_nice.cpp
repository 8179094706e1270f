#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mdskit/errors.hpp"
#include "mdskit/generators.hpp"
#include "mdskit/nice.hpp"
#include "testutil.hpp"

using namespace mdskit;

namespace {

bool is_cover(const Graph& g, const std::vector<int>& c) {
    std::vector<char> in(g.n(), 0);
    for (int v : c) in[v] = 1;
    for (auto [u, v] : g.edges())
        if (!in[u] && !in[v]) return false;
    return true;
}

void check_sandwich(const Graph& g, const NicePartition& part) {
    auto c = sandwiched_minimal_vc(g, part);
    CHECK(is_cover(g, c));
    for (size_t i = 0; i < c.size(); ++i) {
        std::vector<int> smaller = c;
        smaller.erase(smaller.begin() + i);
        CHECK(!is_cover(g, smaller));  // minimality
    }
    std::vector<char> in_c(g.n(), 0);
    for (int v : c) in_c[v] = 1;
    for (int v : part.d) CHECK(in_c[v]);  // D <= C
    std::vector<char> dp(g.n(), 0);
    for (int v : part.d) dp[v] = 1;
    for (int v : part.p) dp[v] = 1;
    for (int v : c) CHECK(dp[v]);  // C <= D u P
}

} // namespace

TEST_CASE("is_nice on small named instances") {
    Graph star3 = testutil::star(3);
    CHECK(is_nice(star3, {{0}, {}}));  // three private leaves

    Graph p4 = gen_path(4);
    CHECK(!is_nice(p4, {{1, 2}, {}}));  // vertex 1 has a single private neighbor

    Graph k2 = gen_path(2);
    NicePartition part;
    CHECK(is_nice(k2, {{}, {0}}, &part));  // D empty, conditions vacuous
    CHECK(part.p == std::vector<int>{0, 1});
    CHECK(part.i.empty());

    CHECK_THROWS_AS(is_nice(p4, {{}, {}}), ContractError);  // invalid input solution
}

TEST_CASE("make_nice on small named instances") {
    Graph p4 = gen_path(4);
    MixedSolution out = make_nice(p4, {{1, 2}, {}});
    CHECK(out.size() == 2);
    CHECK(out.d.empty());
    CHECK(out.m == std::vector<int>{p4.edge_id(0, 1), p4.edge_id(2, 3)});
    CHECK(is_nice(p4, out));

    Graph star3 = testutil::star(3);
    MixedSolution same = make_nice(star3, {{0}, {}});
    CHECK(same.d == std::vector<int>{0});
    CHECK(same.m.empty());

    Graph k2 = gen_path(2);
    MixedSolution k2out = make_nice(k2, {{0, 1}, {}});
    CHECK(k2out.size() == 1);
    CHECK(validate_mds(k2, k2out).valid);
    CHECK(is_nice(k2, k2out));
}

TEST_CASE("make_nice rejects isolated vertices and invalid input") {
    Graph g = testutil::from_edges(3, {{0, 1}});
    CHECK_THROWS_AS(make_nice(g, {{2}, {}}), ContractError);
    Graph p3 = gen_path(3);
    CHECK_THROWS_AS(make_nice(p3, {{}, {}}), ContractError);
}

TEST_CASE("niceness property: random solutions stay valid, nice, and no larger") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 400; ++iter) {
        int n = 2 + (int)(rng() % 11);
        Graph g = testutil::random_isolated_free(n, 0.15 + 0.1 * (rng() % 6), rng);
        MixedSolution sol = testutil::random_valid_solution(g, rng);
        MixedSolution nice = make_nice(g, sol);
        CHECK(validate_mds(g, nice).valid);
        NicePartition part;
        CHECK(is_nice(g, nice, &part));
        CHECK(nice.size() <= sol.size());
        check_sandwich(g, part);
        // The partition's I side must be independent and dominated.
        std::vector<char> in_d(g.n(), 0);
        for (int v : part.d) in_d[v] = 1;
        std::vector<char> in_i(g.n(), 0);
        for (int v : part.i) in_i[v] = 1;
        for (int v : part.i) {
            bool dom = false;
            for (int w : g.neighbors(v)) {
                CHECK(!in_i[w]);
                if (in_d[w]) dom = true;
            }
            CHECK(dom);
        }
    }
}

TEST_CASE("sandwiched_minimal_vc on small named instances") {
    Graph p3 = gen_path(3);
    NicePartition part{{1}, {}, {0, 2}, {}};
    CHECK(sandwiched_minimal_vc(p3, part) == std::vector<int>{1});

    Graph p4 = gen_path(4);
    NicePartition part4{{}, {0, 1, 2, 3}, {}, {p4.edge_id(0, 1), p4.edge_id(2, 3)}};
    check_sandwich(p4, part4);

    Graph k2 = gen_path(2);
    NicePartition part2{{}, {0, 1}, {}, {0}};
    auto c = sandwiched_minimal_vc(k2, part2);
    CHECK(c.size() == 1);
}
