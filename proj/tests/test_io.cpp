#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "mdskit/errors.hpp"
#include "mdskit/generators.hpp"
#include "mdskit/io.hpp"
#include "testutil.hpp"

using namespace mdskit;

namespace {

template <class T, class Print, class Parse>
T round_trip(const T& value, Print print, Parse parse) {
    std::ostringstream out;
    print(out, value);
    std::istringstream in(out.str());
    return parse(in);
}

} // namespace

TEST_CASE("graph format round trip") {
    std::mt19937_64 rng(1);
    for (int iter = 0; iter < 50; ++iter) {
        Graph g = gen_random(1 + (int)(rng() % 12), 0.3, rng());
        Graph back = round_trip(
            g, [](std::ostream& o, const Graph& x) { print_graph(o, x); },
            [](std::istream& i) { return parse_graph(i); });
        CHECK(back.n() == g.n());
        CHECK(back.edges() == g.edges());
    }
}

TEST_CASE("graph parse diagnostics") {
    auto expect_fail = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_graph(in);
            FAIL("expected InputError for: " << text);
        } catch (const InputError& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_fail("p mds 2\n", "p mds");
    expect_fail("p mds 2 1\n1 3\n", "out of range");
    expect_fail("p mds 2 2\n1 2\n", "expected 2 edge lines");
    expect_fail("p mds 2 1\n1 x\n", "token 'x'");
    // Comments are fine anywhere.
    std::istringstream ok("c hello\np mds 2 1\nc mid\n1 2\n");
    CHECK(parse_graph(ok).m() == 1);
}

TEST_CASE("solution format round trip") {
    std::mt19937_64 rng(2);
    for (int iter = 0; iter < 50; ++iter) {
        Graph g = testutil::random_isolated_free(2 + (int)(rng() % 8), 0.4, rng);
        MixedSolution sol = testutil::random_valid_solution(g, rng);
        MixedSolution back = round_trip(
            sol, [&](std::ostream& o, const MixedSolution& s) { print_solution(o, g, s); },
            [&](std::istream& i) { return parse_solution(i, g); });
        CHECK(back.d == sol.d);
        CHECK(back.m == sol.m);
    }
    Graph p3 = gen_path(3);
    std::istringstream bad("s mds 1\nv 9\n");
    CHECK_THROWS_AS(parse_solution(bad, p3), InputError);
    std::istringstream offsize("s mds 2\nv 1\n");
    CHECK_THROWS_AS(parse_solution(offsize, p3), InputError);
}

TEST_CASE("tree decomposition round trip") {
    TreeDecomposition td;
    td.n = 4;
    td.bags = {{0, 1}, {1, 2}, {2, 3}};
    td.tree = {{0, 1}, {1, 2}};
    TreeDecomposition back = round_trip(
        td, [](std::ostream& o, const TreeDecomposition& x) { print_td(o, x); },
        [](std::istream& i) { return parse_td(i); });
    CHECK(back.n == td.n);
    CHECK(back.bags == td.bags);
    CHECK(back.tree == td.tree);

    std::istringstream bad("s td 2 2 3\nb 1 1 2\nb 2 2 3\n");
    CHECK_THROWS_AS(parse_td(bad), InputError);  // missing tree edge
}

TEST_CASE("csp round trip") {
    Csp5Instance csp;
    csp.num_vars = 3;
    csp.arity = 2;
    csp.constraints.push_back({{0, 2}, {{1, 4}, {0, 0}}});
    csp.constraints.push_back({{1}, {{2}}});
    Csp5Instance back = round_trip(
        csp, [](std::ostream& o, const Csp5Instance& x) { print_csp(o, x); },
        [](std::istream& i) { return parse_csp(i); });
    CHECK(back.num_vars == 3);
    CHECK(back.arity == 2);
    REQUIRE(back.constraints.size() == 2);
    CHECK(back.constraints[0].vars == csp.constraints[0].vars);
    CHECK(back.constraints[0].assignments == csp.constraints[0].assignments);
    CHECK(back.constraints[1].vars == csp.constraints[1].vars);

    std::istringstream bad("p csp5 1 1 1\nx 1\na 7\n");
    CHECK_THROWS_AS(parse_csp(bad), InputError);
}
