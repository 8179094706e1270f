#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdskit/errors.hpp"
#include "mdskit/generators.hpp"
#include "mdskit/graph.hpp"
#include "testutil.hpp"

using namespace mdskit;
using testutil::from_edges;

TEST_CASE("graph canonicalization") {
    Graph g = from_edges(4, {{3, 1}, {0, 1}, {1, 3}, {2, 1}});
    CHECK(g.n() == 4);
    CHECK(g.m() == 3);
    CHECK(g.edge(0) == std::pair<int, int>{0, 1});
    CHECK(g.edge_id(3, 1) == g.edge_id(1, 3));
    CHECK(g.edge_id(0, 2) == -1);
    CHECK(g.degree(1) == 3);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), InputError);
}

TEST_CASE("validate_mds on small named instances") {
    Graph k2 = gen_path(2);
    CHECK(validate_mds(k2, {{}, {0}}).valid);  // M covers both vertices and the edge

    Graph p3 = gen_path(3);
    CHECK(validate_mds(p3, {{1}, {}}).valid);  // center dominates all

    MixedSolution bad{{}, {p3.edge_id(0, 1)}};
    auto rep = validate_mds(p3, bad);
    CHECK(!rep.valid);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].kind == Violation::UndominatedVertex);
    CHECK(rep.violations[0].a == 2);
}

TEST_CASE("validate_mds rejects bad ids") {
    Graph p3 = gen_path(3);
    CHECK_THROWS_AS(validate_mds(p3, {{7}, {}}), InputError);
    CHECK_THROWS_AS(validate_mds(p3, {{}, {9}}), InputError);
}

TEST_CASE("validation reports are capped") {
    // An edgeless graph with an empty solution: every vertex undominated.
    Graph g = from_edges(150, {});
    auto rep = validate_mds(g, {});
    CHECK(!rep.valid);
    CHECK(rep.violations.size() == 100);
    CHECK(rep.truncated);
}

TEST_CASE("induced subgraph") {
    Graph p4 = gen_path(4);
    auto [sub, back] = p4.induced({1, 2, 3});
    CHECK(sub.n() == 3);
    CHECK(sub.m() == 2);
    CHECK(back == std::vector<int>{1, 2, 3});
}

TEST_CASE("cost halves arithmetic") {
    CHECK(Cost::of(1, 2).halves == 4);
    CHECK((Cost::of(1, 0) + Cost::of(0, 1)).halves == 3);
    CHECK(Cost::of(0, 3) < Cost::of(2, 0));
}

TEST_CASE("generators are deterministic") {
    Graph a = gen_random(10, 0.3, 7), b = gen_random(10, 0.3, 7);
    CHECK(a.edges() == b.edges());
    CHECK(gen_random(10, 0.0, 3).m() == 0);
    CHECK(gen_path(4).m() == 3);
    CHECK(gen_cycle(3).m() == 3);
    Graph t = gen_tree(12, 5);
    CHECK(t.m() == 11);
    CHECK_THROWS_AS(gen_path(0), InputError);
}
