#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gain/digraph.hpp"
#include "test_support.hpp"

using namespace gain;
using testsupport::fixture_graph;
using testsupport::random_digraph;

namespace {

// Brute-force reachability closure, the oracle for scc().
std::vector<std::vector<bool>> reachability(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) reach[v][v] = true;
    for (std::size_t e = 0; e < g.edge_count(); ++e) reach[g.tail_index(e)][g.head_index(e)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

// Exhaustive 2-coloring search, the oracle for bipartition().
bool two_colorable(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        bool ok = true;
        for (std::size_t e = 0; e < g.edge_count() && ok; ++e) {
            std::size_t t = g.tail_index(e), h = g.head_index(e);
            if (t == h || ((mask >> t) & 1) == ((mask >> h) & 1)) ok = false;
        }
        if (ok) return true;
    }
    return n == 0;
}

}  // namespace

TEST_CASE("parse_graph basics") {
    Digraph g = parse_graph("e a x y\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.vertex_ids() == std::vector<std::string>{"x", "y"});
    CHECK(g.edge(0).tail == "x");
    CHECK(g.edge(0).head == "y");

    Digraph loop = parse_graph("e a x x\n");
    CHECK(loop.vertex_count() == 1);
    CHECK(loop.tail_index(0) == loop.head_index(0));

    CHECK_THROWS_AS(parse_graph("e a x y\ne a y z\n"), GraphParseError);
    CHECK_THROWS_AS(parse_graph("v x\nv x\n"), GraphParseError);
    CHECK_THROWS_AS(parse_graph("w x\n"), GraphParseError);
    CHECK_THROWS_AS(parse_graph("e a x\n"), GraphParseError);
}

TEST_CASE("parse_graph reports line numbers and honors strict mode") {
    try {
        parse_graph("v x\n# fine\ne a x\n");
        CHECK(false);
    } catch (const GraphParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_graph("e a x y\n", /*strict=*/true), GraphParseError);
    CHECK_NOTHROW(parse_graph("v x\nv y\ne a x y\n", /*strict=*/true));

    Digraph g = parse_graph("# comment\n\nv b\ne a c b\n");
    CHECK(g.vertex_ids() == std::vector<std::string>{"b", "c"});
}

TEST_CASE("weak components") {
    CHECK(weak_components(fixture_graph("triangle.g")).size() == 1);
    CHECK(weak_components(parse_graph("v a\nv b\n")).size() == 2);
    CHECK(weak_components(parse_graph("")).empty());
}

TEST_CASE("bipartition examples") {
    Bipartition four = bipartition(fixture_graph("cycle4.g"));
    CHECK(four.bipartite);
    CHECK(four.classes.at("x") == 0);
    CHECK(four.classes.at("z") == 0);
    CHECK(four.classes.at("y") == 1);
    CHECK(four.classes.at("w") == 1);

    Bipartition three = bipartition(fixture_graph("cycle3.g"));
    CHECK_FALSE(three.bipartite);
    REQUIRE(three.odd_cycle.has_value());
    CHECK(three.odd_cycle->steps.size() % 2 == 1);
    CHECK(three.odd_cycle->steps.size() == 3);
    CHECK(validate_witness(fixture_graph("cycle3.g"), *three.odd_cycle, WalkMode::undirected));

    Bipartition loop = bipartition(fixture_graph("loop.g"));
    CHECK_FALSE(loop.bipartite);
    REQUIRE(loop.odd_cycle.has_value());
    CHECK(loop.odd_cycle->steps.size() == 1);

    // Parallel edges do not affect bipartiteness.
    CHECK(bipartition(fixture_graph("parallel.g")).bipartite);
}

TEST_CASE("bipartition agrees with exhaustive 2-coloring search") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 400; ++i) {
        Digraph g = random_digraph(rng, 6, 10);
        Bipartition bip = bipartition(g);
        CHECK(bip.bipartite == two_colorable(g));
        if (!bip.bipartite) {
            REQUIRE(bip.odd_cycle.has_value());
            CHECK(bip.odd_cycle->steps.size() % 2 == 1);
            CHECK(validate_witness(g, *bip.odd_cycle, WalkMode::undirected));
        } else {
            for (std::size_t e = 0; e < g.edge_count(); ++e)
                CHECK(bip.classes.at(g.edge(e).tail) != bip.classes.at(g.edge(e).head));
        }
    }
}

TEST_CASE("scc examples") {
    SccDecomposition ex3 = scc(fixture_graph("ex3.g"));
    CHECK(ex3.component_count == 1);
    CHECK(ex3.r() == 0);

    SccDecomposition tri = scc(fixture_graph("triangle.g"));
    CHECK(tri.component_count == 3);
    CHECK(tri.r() == 3);
    CHECK(tri.cross_edges == std::vector<std::string>{"e1", "e2", "e3"});

    SccDecomposition single = scc(parse_graph("v a\n"));
    CHECK(single.component_count == 1);
    CHECK(single.r() == 0);

    CHECK(scc(fixture_graph("cycle2.g")).component_count == 1);
}

TEST_CASE("scc agrees with the reachability-matrix oracle") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        Digraph g = random_digraph(rng, 6, 10);
        SccDecomposition d = scc(g);
        auto reach = reachability(g);
        const std::size_t n = g.vertex_count();
        std::set<int> comps;
        for (std::size_t u = 0; u < n; ++u) {
            comps.insert(d.component_of[u]);
            for (std::size_t v = 0; v < n; ++v) {
                bool same = reach[u][v] && reach[v][u];
                CHECK(same == (d.component_of[u] == d.component_of[v]));
            }
        }
        CHECK(static_cast<int>(comps.size()) == d.component_count);

        // r counts exactly the edges leaving their component.
        int cross = 0;
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            if (d.component_of[g.tail_index(e)] != d.component_of[g.head_index(e)]) ++cross;
        CHECK(cross == d.r());
        CHECK(static_cast<int>(g.edge_count()) - cross ==
              static_cast<int>(g.edge_count()) - d.r());
    }
}

TEST_CASE("orientations") {
    CHECK(orientations(parse_graph("e a x y\n")).size() == 2);

    auto all = orientations(fixture_graph("triangle.g"));
    CHECK(all.size() == 8);
    std::set<std::vector<std::string>> distinct;
    for (const Digraph& d : all) {
        std::vector<std::string> key;
        for (const Edge& e : d.edges()) {
            key.push_back(e.tail + ">" + e.head);
            CHECK(fixture_graph("triangle.g").has_edge(e.id));
        }
        distinct.insert(key);
    }
    CHECK(distinct.size() == 8);

    std::vector<Edge> many;
    for (int i = 0; i < 21; ++i) many.push_back({"e" + std::to_string(i), "a", "b"});
    Digraph big({"a", "b"}, many);
    CHECK_THROWS_AS(orientations(big), CapExceeded);
}

TEST_CASE("validate_witness enforces the mode rules") {
    Digraph g = fixture_graph("cycle2.g");
    Witness w;
    w.vertices = {"x", "y", "x"};
    w.steps = {{"e1", StepDirection::forward}, {"e2", StepDirection::forward}};
    CHECK(validate_witness(g, w, WalkMode::rigid));
    CHECK(validate_witness(g, w, WalkMode::flexible));

    Witness back;
    back.vertices = {"x", "y", "x"};
    back.steps = {{"e1", StepDirection::forward}, {"e1", StepDirection::reverse}};
    CHECK(validate_witness(g, back, WalkMode::flexible));
    CHECK_FALSE(validate_witness(g, back, WalkMode::rigid));      // reverse step
    CHECK_FALSE(validate_witness(g, back, WalkMode::undirected));  // edge reused

    Witness open = w;
    open.vertices.back() = "y";
    CHECK_FALSE(validate_witness(g, open, WalkMode::rigid));

    Witness wrong = w;
    wrong.steps[0].dir = StepDirection::reverse;
    CHECK_FALSE(validate_witness(g, wrong, WalkMode::flexible));
}
