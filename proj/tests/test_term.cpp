#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace widthproof;
using testutil::T;

TEST_CASE("canonical symbol order") {
    InstructiveAlphabet a2(2);
    std::vector<Symbol> symbols = a2.symbols();
    CHECK(symbols.size() == 1 + 3 + 3 + 3 * 2 + 1);
    CHECK(std::is_sorted(symbols.begin(), symbols.end()));
    CHECK(symbols.front() == Symbol::leaf());
    CHECK(symbols.back() == Symbol::join());
    CHECK(Symbol::intro_vertex(1) < Symbol::intro_vertex(2));
    CHECK(Symbol::intro_vertex(3) < Symbol::forget_vertex(1));
    CHECK(Symbol::intro_edge(1, 2) < Symbol::intro_edge(1, 3));
    CHECK(Symbol::intro_edge(1, 3) < Symbol::intro_edge(2, 1));

    // alphabets grow with the width
    for (int k = 0; k <= 2; ++k) {
        InstructiveAlphabet narrow(k), wide(k + 1);
        for (const Symbol& sym : narrow.symbols())
            CHECK(wide.contains(sym));
    }
}

TEST_CASE("term parsing and printing") {
    const std::string text = "(IntroEdge 1 2 (IntroVertex 2 (IntroVertex 1 (Leaf))))";
    Term t = T(text);
    CHECK(to_string(t) == text);
    CHECK(t.size() == 4);
    CHECK(t.height() == 3);
    CHECK(T("  ( IntroEdge 1 2(IntroVertex 2 (IntroVertex 1 ( Leaf ) )) ) ") == t);

    CHECK_THROWS_AS(T("(IntroEdge 1 2)"), ParseError);       // missing child
    CHECK_THROWS_AS(T("(IntroEdge 1 1 (Leaf))"), ParseError);
    CHECK_THROWS_AS(T("(Frobnicate)"), ParseError);
    CHECK_THROWS_AS(T("(Leaf) junk"), ParseError);
    CHECK_THROWS_AS(T("(Join (Leaf))"), ParseError);

    try {
        T("(IntroVertex 0 (Leaf))");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position > 0);
    }

    CHECK_THROWS_AS(Term(Symbol::intro_edge(1, 2), {}), StructuralError);
}

TEST_CASE("runs of the validity automaton") {
    ActiveSetAutomaton a2(2);
    CHECK(run(a2, T("(Leaf)")) == 0);
    CHECK(!run(a2, T("(IntroVertex 1 (IntroVertex 1 (Leaf)))")).has_value());
    CHECK(run(a2, T("(IntroVertex 3 (IntroVertex 1 (Leaf)))")) == 0b101);

    auto fig = run(a2, testutil::c4_term());
    REQUIRE(fig.has_value());
    CHECK(*fig == 0b100);  // only label 3 active
    CHECK(a2.is_final(*fig));

    CHECK(accepts(a2, T("(Leaf)")));
    CHECK(!accepts(a2, T("(Join (Leaf) (IntroVertex 1 (Leaf)))")));

    ActiveSetAutomaton a0(0);
    CHECK_THROWS_AS(run(a0, T("(IntroVertex 2 (Leaf))")), StructuralError);
}

TEST_CASE("run is deterministic and traversal independent") {
    ActiveSetAutomaton a2(2);
    // second route: plain recursion instead of the shared-node fold
    std::function<std::optional<TreeAutomaton::State>(const Term&)> naive =
        [&](const Term& t) -> std::optional<TreeAutomaton::State> {
        std::vector<TreeAutomaton::State> below;
        for (const Term& c : t.children()) {
            auto s = naive(c);
            if (!s)
                return std::nullopt;
            below.push_back(*s);
        }
        return a2.transition(t.symbol(), below);
    };
    for (const Term& t : enumerate_accepted_terms(a2, 5)) {
        auto first = run(a2, t);
        CHECK(first == run(a2, t));
        CHECK(first == naive(t));
    }
}

TEST_CASE("table automata stay deterministic") {
    std::vector<Symbol> alphabet{Symbol::leaf(), Symbol::join()};
    TableAutomaton a(alphabet, {1});
    a.add_transition(Symbol::leaf(), {}, 0);
    a.add_transition(Symbol::join(), {0, 0}, 1);
    CHECK_THROWS_AS(a.add_transition(Symbol::join(), {0, 0}, 0), StructuralError);
    CHECK(run(a, T("(Join (Leaf) (Leaf))")) == 1);
    CHECK(accepts(a, T("(Join (Leaf) (Leaf))")));
    CHECK(!accepts(a, T("(Leaf)")));
    CHECK(!run(a, T("(Join (Leaf) (Join (Leaf) (Leaf)))")).has_value());
}

TEST_CASE("enumeration of accepted terms") {
    ActiveSetAutomaton a0(0);
    auto tiny = enumerate_accepted_terms(a0, 1);
    REQUIRE(tiny.size() == 1);
    CHECK(to_string(tiny[0]) == "(Leaf)");

    auto two = enumerate_accepted_terms(a0, 2);
    REQUIRE(two.size() == 2);
    CHECK(to_string(two[0]) == "(Leaf)");
    CHECK(to_string(two[1]) == "(IntroVertex 1 (Leaf))");

    ActiveSetAutomaton a1(1);
    auto terms = enumerate_accepted_terms(a1, 6);
    SUBCASE("duplicate-free, all accepted, size-ordered") {
        std::set<std::string> seen;
        std::size_t last_size = 0;
        for (const Term& t : terms) {
            CHECK(seen.insert(to_string(t)).second);
            CHECK(accepts(a1, t));
            CHECK(t.size() >= last_size);
            last_size = t.size();
        }
    }
    SUBCASE("count agrees with generate-all-then-filter") {
        auto everything = testutil::all_terms(a1.alphabet(), 4);
        std::size_t accepted = 0;
        for (const Term& t : everything)
            if (accepts(a1, t))
                ++accepted;
        std::size_t enumerated = 0;
        for (const Term& t : terms)
            if (t.size() <= 4)
                ++enumerated;
        CHECK(accepted == enumerated);
    }
    SUBCASE("random accepted walks appear in the enumeration") {
        std::set<std::string> listed;
        for (const Term& t : terms)
            listed.insert(to_string(t));
        std::mt19937 rng(7);
        for (int i = 0; i < 50; ++i) {
            Term t = testutil::random_valid_term(rng, 1, 5);
            if (t.size() <= 6)
                CHECK(listed.count(to_string(t)) == 1);
        }
    }
}

TEST_CASE("enumeration budget guard") {
    ActiveSetAutomaton a2(2);
    CHECK_THROWS_AS(enumerate_accepted_terms(a2, 8, 100), std::length_error);
    CHECK_THROWS_AS(enumerate_accepted_terms(a2, 0), std::invalid_argument);
}
