#include <doctest.h>

#include "test_util.hpp"
#include "widthproof/atp.hpp"
#include "widthproof/combinator.hpp"
#include "widthproof/oracle.hpp"

using namespace widthproof;
using testutil::T;

TEST_CASE("inclusion holds for width-0 simplicity") {
    ProofOutcome outcome = inclusion_test(*cores::simple(), 0);
    CHECK(outcome.verdict == Verdict::Holds);
    CHECK(!outcome.refutation);
}

TEST_CASE("inclusion holds for 2-coloring at width 1") {
    CHECK(inclusion_test(*cores::colorable(2), 1).verdict == Verdict::Holds);
}

TEST_CASE("connectivity is refuted with the minimal counterexample") {
    CorePtr core = cores::conn();
    ProofOutcome outcome = inclusion_test(*core, 1);
    REQUIRE(outcome.verdict == Verdict::Refuted);
    REQUIRE(outcome.refutation);
    REQUIRE(outcome.counterexample);

    CHECK(to_string(*outcome.counterexample) == "(IntroVertex 2 (IntroVertex 1 (Leaf)))");
    CHECK(outcome.counterexample->size() == 3);
    CHECK(validate(1, *outcome.counterexample));
    CHECK(!accepts(*core, 1, *outcome.counterexample));
    CHECK(outcome.graph->vertex_count() == 2);
    CHECK(outcome.graph->edge_count() == 0);

    SUBCASE("the refutation is a valid certificate") {
        CHECK(verify_refutation(*core, 1, *outcome.refutation));
        CHECK(outcome.counterexample->height() <=
              static_cast<int>(outcome.refutation->size()) - 1);
    }
    SUBCASE("tampering is detected") {
        Refutation bad = *outcome.refutation;
        bad.back().set = WitnessSet{};
        CHECK(!verify_refutation(*core, 1, bad));

        Refutation dangling = *outcome.refutation;
        dangling.back().children = {99};
        CHECK(!verify_refutation(*core, 1, dangling));
        CHECK_THROWS_AS(reconstruct_counterexample(dangling), std::invalid_argument);

        Refutation wrong_symbol = *outcome.refutation;
        wrong_symbol.back().symbol = Symbol::forget_vertex(1);  // no such transition
        CHECK(!verify_refutation(*core, 1, wrong_symbol));

        Refutation outside = *outcome.refutation;
        outside.back().symbol = Symbol::intro_vertex(7);  // not in the alphabet
        CHECK(!verify_refutation(*core, 1, outside));
    }
}

TEST_CASE("implication conjecture holds at width 1") {
    CorePtr product = parse_conjecture("Simple -> Colorable(2)").product();
    CHECK(inclusion_test(*product, 1).verdict == Verdict::Holds);
}

TEST_CASE("cover-bound conjecture is refuted at width 1") {
    CorePtr product = parse_conjecture("inv:MinVertexCover <= 1").product();
    ProofOutcome outcome = inclusion_test(*product, 1);
    REQUIRE(outcome.verdict == Verdict::Refuted);
    CHECK(verify_refutation(*product, 1, *outcome.refutation));
    CHECK(validate(1, *outcome.counterexample));
    CHECK(!accepts(*product, 1, *outcome.counterexample));
    CHECK(oracle::min_vertex_cover(*outcome.graph) >= 2);
}

TEST_CASE("bounded search agrees with exhaustive checking") {
    SUBCASE("only the leaf term at n = 1") {
        ProofOutcome outcome = bounded_inclusion_test(*cores::hamiltonian(), 1, 1);
        CHECK(outcome.verdict == Verdict::Refuted);
        CHECK(to_string(*outcome.counterexample) == "(Leaf)");
    }
    SUBCASE("the smallest cover-2 graph needs a size-9 term") {
        CorePtr product = parse_conjecture("inv:MinVertexCover <= 1").product();
        CHECK(bounded_inclusion_test(*product, 1, 8).verdict == Verdict::Holds);
        ProofOutcome outcome = bounded_inclusion_test(*product, 1, 9);
        REQUIRE(outcome.verdict == Verdict::Refuted);
        CHECK(outcome.counterexample->size() <= 9);
    }
    SUBCASE("verdicts match enumeration for several cores") {
        for (CorePtr core : {cores::conn(), cores::simple(), cores::colorable(1),
                             cores::hamiltonian(), cores::econn_le(1)}) {
            ProofOutcome outcome = bounded_inclusion_test(*core, 1, 6);
            bool all_accepted = true;
            DynamizeMemo memo;
            for (const Term& t : enumerate_accepted_terms(ActiveSetAutomaton(1), 6))
                all_accepted = all_accepted && accepts(*core, 1, t, &memo);
            CHECK((outcome.verdict == Verdict::Holds) == all_accepted);
            if (outcome.verdict == Verdict::Refuted) {
                CHECK(outcome.counterexample->size() <= 6);
                CHECK(verify_refutation(*core, 1, *outcome.refutation));
                CHECK(!accepts(*core, 1, *outcome.counterexample));
            }
        }
    }
    CHECK_THROWS_AS(bounded_inclusion_test(*cores::conn(), 1, 0), std::invalid_argument);
}

TEST_CASE("budgets cut the search off cleanly") {
    SearchBudget tiny;
    tiny.max_pairs = 3;
    CorePtr product = parse_conjecture("inv:MinVertexCover <= 1").product();
    CHECK(inclusion_test(*product, 1, tiny).verdict == Verdict::BudgetExhausted);
    SearchBudget small_bytes;
    small_bytes.max_bytes = 128;
    CHECK(inclusion_test(*product, 1, small_bytes).verdict == Verdict::BudgetExhausted);
}

TEST_CASE("search statistics and determinism") {
    CorePtr core = cores::conn();
    ProofOutcome a = inclusion_test(*core, 1);
    ProofOutcome b = inclusion_test(*core, 1);
    CHECK(a.stats.pairs_visited == b.stats.pairs_visited);
    REQUIRE(a.refutation);
    REQUIRE(b.refutation);
    CHECK(refutation_to_json(*core, 1, *a.refutation) ==
          refutation_to_json(*core, 1, *b.refutation));

    // visited pairs never exceed states times distinct witness sets
    ProofOutcome holds = inclusion_test(*cores::colorable(2), 1);
    CHECK(holds.stats.pairs_visited <= (1ull << 2) * holds.stats.distinct_sets);

    SUBCASE("refutation dumps parse back as JSON") {
        std::string dump = refutation_to_json(*core, 1, *a.refutation);
        CHECK(dump.find("\"state\"") != std::string::npos);
        CHECK(dump.find("\"child_indices\"") != std::string::npos);
    }
}

TEST_CASE("golden verdicts cross-checked by enumeration") {
    struct Golden {
        int k;
        std::string conjecture;
        Verdict verdict;
    };
    std::vector<Golden> golden = {
        {0, "Simple", Verdict::Holds},
        {1, "Colorable(2)", Verdict::Holds},
        {1, "Conn", Verdict::Refuted},
        {1, "Simple -> Colorable(2)", Verdict::Holds},
        {1, "inv:MinVertexCover <= 1", Verdict::Refuted},
    };
    for (const auto& g : golden) {
        CorePtr product = parse_conjecture(g.conjecture).product();
        ProofOutcome outcome = inclusion_test(*product, g.k);
        CHECK(outcome.verdict == g.verdict);

        // size 10 reaches the smallest cover-2 witness (two disjoint edges,
        // term size 9); everything smaller satisfies the cover bound
        bool all_accepted = true;
        DynamizeMemo memo;
        for (const Term& t : enumerate_accepted_terms(ActiveSetAutomaton(g.k), 10))
            all_accepted = all_accepted && accepts(*product, g.k, t, &memo);
        if (g.verdict == Verdict::Holds)
            CHECK(all_accepted);
        else
            CHECK(!all_accepted);
    }
}
