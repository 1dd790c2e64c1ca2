#include <doctest.h>

#include <map>
#include <random>

#include "test_util.hpp"

using namespace widthproof;

namespace {

BoundariedGraph k2_with_boundary_1() {
    Multigraph g;
    g.add_vertex(1);
    g.add_vertex(2);
    g.add_edge(1, 1, 2);
    return BoundariedGraph{g, {{1, 1}}};
}

}  // namespace

TEST_CASE("multigraph invariants") {
    Multigraph g;
    g.add_vertex(1);
    g.add_vertex(2);
    CHECK_THROWS_AS(g.add_vertex(1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 1, 1), std::invalid_argument);   // self-loop
    CHECK_THROWS_AS(g.add_edge(1, 1, 9), std::invalid_argument);   // missing endpoint
    g.add_edge(1, 2, 1);
    g.add_edge(2, 1, 2);  // parallel edge is fine
    CHECK(g.endpoints(1) == std::pair<int, int>{1, 2});
    CHECK(g.edges_between(1, 2) == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.size() == 4);
}

TEST_CASE("join follows the renumbering scheme") {
    SUBCASE("empty operands") {
        BoundariedGraph empty;
        BoundariedGraph glued = join(empty, empty);
        CHECK(glued.graph.size() == 0);
        CHECK(glued.boundary.empty());
    }
    SUBCASE("full overlap collapses to one vertex") {
        Multigraph g;
        g.add_vertex(1);
        BoundariedGraph a{g, {{1, 1}}};
        BoundariedGraph glued = join(a, a);
        CHECK(glued.graph.vertex_count() == 1);
        CHECK(glued.graph.edge_count() == 0);
    }
    SUBCASE("two single edges glue to a path on vertices {1,2,4}") {
        BoundariedGraph a = k2_with_boundary_1();
        BoundariedGraph glued = join(a, a);
        CHECK(glued.graph.vertices() == std::set<int>{1, 2, 4});
        REQUIRE(glued.graph.edge_count() == 2);
        CHECK(glued.graph.endpoints(1) == std::pair<int, int>{1, 2});
        CHECK(glued.graph.endpoints(2) == std::pair<int, int>{1, 4});
        CHECK(glued.boundary == std::map<int, int>{{1, 1}});
    }
    SUBCASE("mismatched boundary domains are rejected") {
        BoundariedGraph a = k2_with_boundary_1();
        BoundariedGraph b = a;
        b.boundary = {{2, 1}};
        CHECK_THROWS_AS(join(a, b), std::invalid_argument);
    }
}

TEST_CASE("isomorphism on small graphs") {
    CHECK(isomorphic(Multigraph{}, Multigraph{}));
    CHECK(!isomorphic(testutil::path_graph(2), [] {
        Multigraph g;
        g.add_vertex(1);
        g.add_vertex(2);
        return g;
    }()));
    SUBCASE("edge multiplicities matter") {
        Multigraph doubled = testutil::path_graph(2);
        doubled.add_edge(7, 1, 2);
        CHECK(!isomorphic(doubled, testutil::path_graph(2)));
    }
    SUBCASE("relabeling is invisible") {
        Multigraph shifted;
        for (int v : {10, 20, 30})
            shifted.add_vertex(v);
        shifted.add_edge(5, 30, 10);
        shifted.add_edge(9, 10, 20);
        CHECK(isomorphic(shifted, testutil::path_graph(3)));
        CHECK(canonical_form(shifted) == canonical_form(testutil::path_graph(3)));
    }
}

TEST_CASE("canonical forms") {
    CHECK(canonical_form(Multigraph{}) == "empty");
    CHECK(canonical_form(testutil::complete_graph(3)) !=
          canonical_form(testutil::path_graph(3)));
    Multigraph big;
    for (int v = 1; v <= 11; ++v)
        big.add_vertex(v);
    CHECK_THROWS_AS(canonical_form(big), std::length_error);
}

TEST_CASE("join is associative up to isomorphism") {
    std::mt19937 rng(11);
    auto random_bg = [&] {
        Multigraph g;
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        for (int v = 1; v <= n; ++v)
            g.add_vertex(v);
        int edges = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int e = 1; e <= edges; ++e) {
            int u = std::uniform_int_distribution<int>(1, n)(rng);
            int v = std::uniform_int_distribution<int>(1, n)(rng);
            if (u != v)
                g.add_edge(g.max_edge_id() + 1, u, v);
        }
        return BoundariedGraph{g, {{1, 1}, {2, 2}}};
    };
    for (int i = 0; i < 25; ++i) {
        BoundariedGraph a = random_bg(), b = random_bg(), c = random_bg();
        BoundariedGraph left = join(join(a, b), c);
        BoundariedGraph right = join(a, join(b, c));
        CHECK(isomorphic(left.graph, right.graph));
    }
    SUBCASE("empty graph with empty boundary is an identity") {
        Multigraph g = testutil::cycle_graph(4);
        BoundariedGraph x{g, {}};
        CHECK(isomorphic(join(x, BoundariedGraph{}).graph, g));
           CHECK(isomorphic(join(BoundariedGraph{}, x).graph, g));
    }
}

TEST_CASE("canonical form matches isomorphism on extracted graphs") {
    // group every graph from the size-<=8 corpora by canonical form; the
    // form is equal exactly on isomorphic graphs
    std::map<std::string, std::vector<Multigraph>> groups;
    for (int k = 0; k <= 2; ++k) {
        ActiveSetAutomaton automaton(k);
        for (const Term& t : enumerate_accepted_terms(automaton, 8)) {
            Multigraph g = extract(k, t).graph;
            groups[canonical_form(g)].push_back(std::move(g));
        }
    }
    CHECK(groups.size() > 10);
    std::vector<const Multigraph*> representatives;
    for (const auto& [form, members] : groups) {
        representatives.push_back(&members.front());
        for (std::size_t i = 1; i < members.size(); ++i)
            REQUIRE(isomorphic(members.front(), members[i]));
    }
    for (std::size_t i = 0; i < representatives.size(); ++i)
        for (std::size_t j = i + 1; j < representatives.size(); ++j)
            REQUIRE(!isomorphic(*representatives[i], *representatives[j]));
}

TEST_CASE("graph serialization") {
    Multigraph g = testutil::cycle_graph(4);
    Multigraph back = graph_from_json(to_json(g));
    CHECK(back == g);
    CHECK(to_dot(g).find("1 -- 2") != std::string::npos);
    CHECK_THROWS(graph_from_json("{\"vertices\":[1],\"edges\":[{\"id\":1,\"endpoints\":[1]}]}"));
}
