#include <doctest.h>

#include "test_util.hpp"
#include "widthproof/oracle.hpp"

using namespace widthproof;
using testutil::T;

namespace {

const char* kDigon = "(IntroEdge 1 2 (IntroEdge 1 2 (IntroVertex 2 (IntroVertex 1 (Leaf)))))";
const char* kTwoIsolated = "(IntroVertex 2 (IntroVertex 1 (Leaf)))";
const char* kSingleEdge = "(IntroEdge 1 2 (IntroVertex 2 (IntroVertex 1 (Leaf))))";
const char* kP3 =
    "(IntroEdge 1 2 (IntroVertex 1 (ForgetVertex 1 (IntroEdge 1 2 (IntroVertex 2 "
    "(IntroVertex 1 (Leaf)))))))";
const char* kStar3 =
    "(ForgetVertex 2 (IntroEdge 1 2 (IntroVertex 2 (ForgetVertex 2 (IntroEdge 1 2 "
    "(IntroVertex 2 (ForgetVertex 2 (IntroEdge 1 2 (IntroVertex 2 (IntroVertex 1 "
    "(Leaf)))))))))))";

}  // namespace

TEST_CASE("simple core") {
    CorePtr core = cores::simple();
    CHECK(accepts(*core, 1, T("(Leaf)")));
    CHECK(dynamize(*core, 1, T("(Leaf)")).size() == 1);
    CHECK(!accepts(*core, 1, T(kDigon)));
    CHECK(accepts(*core, 2, testutil::c4_term()));
    SUBCASE("parallel edges created by a join") {
        std::string half = kSingleEdge;
        CHECK(!accepts(*core, 1, T("(Join " + half + " " + half + ")")));
    }
}

TEST_CASE("degree cores") {
    CHECK(accepts(*cores::min_deg_le(0), 0, T("(IntroVertex 1 (Leaf))")));
    CHECK(!accepts(*cores::min_deg_le(0), 0, T("(Leaf)")));  // no vertex at all
    CHECK(!accepts(*cores::max_deg_ge(0), 0, T("(Leaf)")));
    CHECK(accepts(*cores::max_deg_ge(0), 0, T("(IntroVertex 1 (Leaf))")));

    SUBCASE("the 3-star") {
        Term star = T(kStar3);
        CHECK(accepts(*cores::max_deg_ge(3), 1, star));
        CHECK(!accepts(*cores::max_deg_ge(4), 1, star));
        CHECK(accepts(*cores::min_deg_le(1), 1, star));
        CHECK(!accepts(*cores::min_deg_le(0), 1, star));
        // counters saturate above d+1 without losing the verdict
        CHECK(accepts(*cores::max_deg_ge(1), 1, star));
    }
}

TEST_CASE("colorable core") {
    CHECK(!accepts(*cores::colorable(2), 2, testutil::k3_term()));
    CHECK(accepts(*cores::colorable(3), 2, testutil::k3_term()));
    CHECK(accepts(*cores::colorable(2), 2, testutil::c4_term()));
    CHECK(accepts(*cores::colorable(1), 1, T(kTwoIsolated)));
    CHECK(!accepts(*cores::colorable(1), 1, T(kSingleEdge)));
    SUBCASE("c >= k+1 collapses to one always-final witness") {
        CorePtr trivial = cores::colorable(3);
        for (const Term& t : enumerate_accepted_terms(ActiveSetAutomaton(2), 5)) {
            WitnessSet s = dynamize(*trivial, 2, t);
            CHECK(s.size() == 1);
            CHECK(has_final_witness(*trivial, 2, s));
        }
    }
}

TEST_CASE("connectivity core") {
    CorePtr core = cores::conn();
    WitnessSet leaf = dynamize(*core, 2, T("(Leaf)"));
    CHECK(leaf.size() == 1);
    CHECK(accepts(*core, 2, T("(Leaf)")));  // the empty graph counts
    CHECK(!accepts(*core, 1, T(kTwoIsolated)));
    CHECK(accepts(*core, 1, T(kSingleEdge)));
    CHECK(accepts(*core, 1, T(kP3)));
    CHECK(accepts(*core, 2, testutil::c4_term()));
    SUBCASE("joining two finished components is fatal") {
        std::string forgotten = "(ForgetVertex 1 (IntroVertex 1 (Leaf)))";
        CHECK(!accepts(*core, 1, T("(Join " + forgotten + " " + forgotten + ")")));
    }
}

TEST_CASE("deletion connectivity cores") {
    CHECK(accepts(*cores::econn_le(1), 1, T(kP3)));
    CHECK(accepts(*cores::econn_le(1), 1, T(kSingleEdge)));
    CHECK(!accepts(*cores::econn_le(0), 1, T(kSingleEdge)));
    CHECK(accepts(*cores::econn_le(0), 1, T(kTwoIsolated)));
    // two of the triangle's three edges isolate a vertex
    CHECK(accepts(*cores::econn_le(2), 2, testutil::k3_term()));
    CHECK(!accepts(*cores::econn_le(1), 2, testutil::k3_term()));
    CHECK(accepts(*cores::vconn_le(1), 1, T(kP3)));
    CHECK(accepts(*cores::vconn_le(0), 1, T(kTwoIsolated)));
    CHECK(!accepts(*cores::vconn_le(0), 1, T(kSingleEdge)));
    // complete graphs cannot be disconnected by deletions, so the literal
    // final condition never fires on them
    CHECK(!accepts(*cores::vconn_le(2), 2, testutil::k3_term()));
    CHECK(accepts(*cores::vconn_le(2), 2, testutil::c4_term()));
}

TEST_CASE("hamiltonian core") {
    CorePtr core = cores::hamiltonian();
    CHECK(accepts(*core, 2, testutil::k3_term()));
    CHECK(accepts(*core, 2, testutil::c4_term()));
    CHECK(!accepts(*core, 1, T(kP3)));
    CHECK(!accepts(*core, 1, T("(IntroVertex 1 (Leaf))")));
    CHECK(!accepts(*core, 1, T("(Leaf)")));
    CHECK(!accepts(*core, 1, T(kDigon)));  // a two-vertex cycle is no cycle
}

TEST_CASE("flow core") {
    for (int m : {2, 3, 4, 5})
        CHECK(!accepts(*cores::nzflow(m), 1, T(kSingleEdge)));
    CHECK(accepts(*cores::nzflow(2), 2, testutil::k3_term()));
    CHECK(accepts(*cores::nzflow(3), 2, testutil::k3_term()));
    CHECK(accepts(*cores::nzflow(2), 1, T(kDigon)));
    CHECK(accepts(*cores::nzflow(2), 1, T("(Leaf)")));
    CHECK(accepts(*cores::nzflow(2), 2, testutil::c4_term()));

    SUBCASE("acceptance is invariant under unit scaling") {
        const int m = 5;
        CorePtr core = cores::nzflow(m);
        ActiveSetAutomaton automaton(1);
        DynamizeMemo memo;
        for (const Term& t : enumerate_accepted_terms(automaton, 6)) {
            WitnessSet s = dynamize(*core, 1, t, &memo);
            for (int unit : {2, 3, 4}) {
                std::vector<BitString> scaled;
                for (const BitString& w : s.elems())
                    scaled.push_back(cores::nzflow_scale(1, m, w, unit));
                CHECK(WitnessSet::of(std::move(scaled)) == s);
            }
        }
    }
    SUBCASE("transitions commute with unit scaling") {
        const int m = 5;
        CorePtr core = cores::nzflow(m);
        Term t = T("(IntroVertex 2 (IntroVertex 1 (Leaf)))");
        WitnessSet s = dynamize(*core, 1, t);
        for (const Symbol& sym :
             {Symbol::intro_edge(1, 2), Symbol::forget_vertex(1), Symbol::intro_edge(2, 1)}) {
            for (int unit : {2, 3}) {
                WitnessSet in_scaled;
                for (const BitString& w : s.elems())
                    in_scaled.insert(cores::nzflow_scale(1, m, w, unit));
                WitnessSet lhs[1] = {in_scaled};
                WitnessSet rhs[1] = {s};
                WitnessSet direct = step(*core, 1, sym, lhs);
                WitnessSet mapped;
                WitnessSet raw = step(*core, 1, sym, rhs);
                for (const BitString& w : raw.elems())
                    mapped.insert(cores::nzflow_scale(1, m, w, unit));
                CHECK(direct == mapped);
            }
        }
    }
}

TEST_CASE("minor core") {
    Multigraph k1;
    k1.add_vertex(1);
    CHECK(accepts(*cores::minor(testutil::path_graph(2)), 1, T(kSingleEdge)));
    CHECK(!accepts(*cores::minor(testutil::complete_graph(3)), 1, T(kP3)));
    CHECK(accepts(*cores::minor(testutil::complete_graph(3)), 2, testutil::c4_term()));
    CHECK(accepts(*cores::minor(testutil::complete_graph(3)), 2, testutil::k3_term()));
    CHECK(accepts(*cores::minor(k1), 1, T("(Leaf)")));  // literal convention
    CHECK(accepts(*cores::minor(k1), 1, T("(IntroVertex 1 (Leaf))")));
    CHECK(!accepts(*cores::minor(testutil::path_graph(2)), 1, T(kTwoIsolated)));
}

TEST_CASE("core registry") {
    CHECK(cores::make_core("VertexCover(2)")->name() == "VertexCover(2)");
    CHECK(cores::make_core("MinVertexCover")->name() == "MinVertexCover");
    CHECK(cores::make_core("NZFlow(5)")->name() == "NZFlow(5)");
    CHECK_THROWS_AS(cores::make_core("Widget"), std::invalid_argument);
    CHECK_THROWS_AS(cores::make_core("Colorable(x)"), std::invalid_argument);
    CHECK_THROWS_AS(cores::make_core("Minor(nofile)"), std::invalid_argument);
    CHECK_THROWS_AS(cores::make_core("Minor(@/no/such/file.json)"), std::invalid_argument);
}

TEST_CASE("acceptance equals the oracles on a small corpus") {
    struct Case {
        CorePtr core;
        std::function<bool(const Multigraph&)> reference;
    };
    std::vector<Case> cases;
    cases.push_back({cores::vertex_cover(1),
                     [](const Multigraph& g) { return oracle::min_vertex_cover(g) <= 1; }});
    cases.push_back({cores::simple(), [](const Multigraph& g) { return oracle::is_simple(g); }});
    cases.push_back({cores::max_deg_ge(2),
                     [](const Multigraph& g) { return oracle::max_degree_ge(g, 2); }});
    cases.push_back({cores::min_deg_le(1),
                     [](const Multigraph& g) { return oracle::min_degree_le(g, 1); }});
    cases.push_back({cores::colorable(1),
                     [](const Multigraph& g) { return oracle::colorable(g, 1); }});
    cases.push_back({cores::conn(), [](const Multigraph& g) { return oracle::is_connected(g); }});
    cases.push_back({cores::vconn_le(1), [](const Multigraph& g) {
                         return oracle::vertex_connectivity_le(g, 1);
                     }});
    cases.push_back({cores::econn_le(1), [](const Multigraph& g) {
                         return oracle::edge_connectivity_le(g, 1);
                     }});
    cases.push_back({cores::hamiltonian(),
                     [](const Multigraph& g) { return oracle::is_hamiltonian(g); }});
    cases.push_back({cores::nzflow(2), [](const Multigraph& g) {
                         return oracle::has_nowhere_zero_flow(g, 2);
                     }});
    cases.push_back({cores::minor(testutil::path_graph(2)), [](const Multigraph& g) {
                         return oracle::has_minor(g, testutil::path_graph(2));
                     }});

    for (int k = 0; k <= 1; ++k) {
        ActiveSetAutomaton automaton(k);
        std::vector<Term> corpus = enumerate_accepted_terms(automaton, 6);
        for (auto& c : cases) {
            DynamizeMemo memo;
            for (const Term& t : corpus) {
                Multigraph g = extract(k, t).graph;
                REQUIRE(accepts(*c.core, k, t, &memo) == c.reference(g));
            }
        }
    }
}

TEST_CASE("deterministic cores have multiplicity one") {
    for (int k = 0; k <= 2; ++k) {
        for (CorePtr core :
             {cores::simple(), cores::max_deg_ge(2), cores::min_deg_le(1), cores::conn()}) {
            ComplexityReport r = measure_complexity(*core, k, 6);
            CHECK(r.mu == 1);
        }
    }
}

TEST_CASE("witness bitlengths") {
    // Simple packs one bit per label pair
    ComplexityReport simple = measure_complexity(*cores::simple(), 2, 6);
    CHECK(simple.beta == 3);
    // Colorable packs ceil(log2(c+1)) bits per label
    ComplexityReport col = measure_complexity(*cores::colorable(2), 2, 6);
    CHECK(col.beta <= 6);
    // the packed minor encoding stays within its documented bound:
    // 2|V_H| + |E_H| + 2|V_H| + 2k + (k+1)(2 + ceil(log2(k+1)))
    Multigraph h = testutil::complete_graph(3);
    ComplexityReport minor = measure_complexity(*cores::minor(h), 2, 6);
    std::size_t vh = h.vertex_count(), eh = h.edge_count(), k = 2;
    CHECK(minor.beta <= 2 * vh + eh + 2 * vh + 2 * k + (k + 1) * (2 + bit_width_for(k)));
}

TEST_CASE("acceptance equals the oracles on random joined terms") {
    // random width-2 terms reach join shapes the exhaustive size-8 corpus
    // cannot, e.g. gluing extra structure onto a finished cycle
    std::vector<std::pair<CorePtr, std::function<bool(const Multigraph&)>>> cases;
    cases.emplace_back(cores::hamiltonian(),
                       [](const Multigraph& g) { return oracle::is_hamiltonian(g); });
    cases.emplace_back(cores::conn(),
                       [](const Multigraph& g) { return oracle::is_connected(g); });
    cases.emplace_back(cores::simple(),
                       [](const Multigraph& g) { return oracle::is_simple(g); });
    cases.emplace_back(cores::nzflow(3), [](const Multigraph& g) {
        return oracle::has_nowhere_zero_flow(g, 3);
    });
    cases.emplace_back(cores::econn_le(1), [](const Multigraph& g) {
        return oracle::edge_connectivity_le(g, 1);
    });
    cases.emplace_back(cores::vconn_le(1), [](const Multigraph& g) {
        return oracle::vertex_connectivity_le(g, 1);
    });
    cases.emplace_back(cores::minor(testutil::complete_graph(3)), [](const Multigraph& g) {
        return oracle::has_minor(g, testutil::complete_graph(3));
    });
    cases.emplace_back(cores::colorable(2),
                       [](const Multigraph& g) { return oracle::colorable(g, 2); });
    cases.emplace_back(cores::max_deg_ge(3),
                       [](const Multigraph& g) { return oracle::max_degree_ge(g, 3); });
    cases.emplace_back(cores::vertex_cover(3), [](const Multigraph& g) {
        return oracle::min_vertex_cover(g) <= 3;
    });
    std::mt19937 rng(41);
    for (int i = 0; i < 250; ++i) {
        Term t = testutil::random_valid_term(rng, 2, 8 + i % 9);
        Multigraph g = extract(2, t).graph;
        if (g.vertex_count() > 8 || g.edge_count() > 14)
            continue;
        for (auto& [core, reference] : cases)
            REQUIRE(accepts(*core, 2, t) == reference(g));
    }
}
