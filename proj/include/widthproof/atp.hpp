#ifndef WIDTHPROOF_ATP_HPP
#define WIDTHPROOF_ATP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "widthproof/dpcore.hpp"
#include "widthproof/graph.hpp"
#include "widthproof/itd.hpp"

namespace widthproof {

/// One derived (automaton-state, witness-set) pair together with how it was
/// derived: an alphabet symbol applied to earlier entries (none at arity 0).
struct RefutationEntry {
    TreeAutomaton::State state = 0;
    WitnessSet set;
    Symbol symbol;
    std::vector<int> children;  // indices of earlier entries
};

/// A derivation sequence whose last pair is inconsistent: the automaton
/// state is final but the witness set has no final witness.
using Refutation = std::vector<RefutationEntry>;

enum class Verdict { Holds, Refuted, BudgetExhausted };

struct SearchStats {
    std::uint64_t pairs_visited = 0;   // dequeued and expanded
    std::uint64_t pairs_created = 0;   // inserted into the frontier
    std::uint64_t frontier_peak = 0;
    std::uint64_t distinct_sets = 0;   // distinct witness sets among visited
    double wall_seconds = 0;           // informational; never printed in
                                       // deterministic outputs
};

struct ProofOutcome {
    Verdict verdict = Verdict::Holds;
    std::optional<Refutation> refutation;
    std::optional<Term> counterexample;
    std::optional<Multigraph> graph;
    SearchStats stats;
};

struct SearchBudget {
    std::uint64_t max_pairs = 1'000'000;
    std::uint64_t max_bytes = 1ull << 30;
};

/// Breadth-first search over derivable (state, witness-set) pairs in FIFO
/// order with canonical symbol/tuple order; each pair is expanded exactly
/// once. Refuted as soon as an inconsistent pair is dequeued; Holds when
/// the space is exhausted. Termination is only guaranteed for finite
/// cores; the budget turns a runaway search into BudgetExhausted.
ProofOutcome inclusion_test(const DPCore& core, int k, const SearchBudget& budget = {});

/// Same search over (state, witness-set, term-size) triples with size at
/// most n: decides whether every valid width-k term of size <= n is
/// accepted. Terminates for every core.
ProofOutcome bounded_inclusion_test(const DPCore& core, int k, int n,
                                    const SearchBudget& budget = {});

/// Replays the derivation into the counterexample term (the last entry's
/// term). Throws std::invalid_argument on dangling child indices.
Term reconstruct_counterexample(const Refutation& refutation);

/// Proof-certificate check: re-derives every entry from its recorded
/// children via the width-k automaton and the core's set transition, and
/// checks the final pair is inconsistent.
bool verify_refutation(const DPCore& core, int k, const Refutation& refutation);

std::string refutation_to_json(const DPCore& core, int k, const Refutation& refutation);

}  // namespace widthproof

#endif
