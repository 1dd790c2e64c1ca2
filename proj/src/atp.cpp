#include "widthproof/atp.hpp"

#include <chrono>
#include <deque>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace widthproof {

namespace {

struct Pending {
    TreeAutomaton::State state;
    WitnessSet set;
    Symbol symbol;
    std::vector<int> children;
    int size;  // term size for the bounded search, 0 otherwise
};

std::string visited_key(TreeAutomaton::State state, const WitnessSet& set, int size) {
    std::string key;
    key.reserve(16 + set.serialize().bytes().size());
    key.append(std::to_string(state));
    key.push_back('/');
    key.append(std::to_string(size));
    key.push_back('/');
    BitString bits = set.serialize();
    key.append(reinterpret_cast<const char*>(bits.bytes().data()), bits.bytes().size());
    return key;
}

/// FIFO search over derivable pairs (triples when size_cap > 0). Pairs are
/// deduplicated at insertion, so each is expanded exactly once, and the
/// dequeue order gives the refutation indices.
ProofOutcome search(const DPCore& core, int k, int size_cap, const SearchBudget& budget) {
    auto started = std::chrono::steady_clock::now();
    ActiveSetAutomaton automaton(k);
    const std::vector<Symbol> alphabet = automaton.alphabet();

    ProofOutcome outcome;
    Refutation trail;
    std::vector<int> sizes;
    std::deque<Pending> frontier;
    std::unordered_set<std::string> seen;
    std::set<std::string> distinct_sets;
    std::uint64_t bytes = 0;

    auto offer = [&](TreeAutomaton::State state, WitnessSet set, const Symbol& symbol,
                     std::vector<int> children, int size) {
        if (size_cap > 0 && size > size_cap)
            return;
        std::string key = visited_key(state, set, size_cap > 0 ? size : 0);
        if (!seen.insert(key).second)
            return;
        bytes += key.size() + 64;
        ++outcome.stats.pairs_created;
        frontier.push_back(Pending{state, std::move(set), symbol, std::move(children), size});
        outcome.stats.frontier_peak =
            std::max<std::uint64_t>(outcome.stats.frontier_peak, frontier.size());
    };

    for (const Symbol& sym : alphabet) {
        if (sym.arity() != 0)
            continue;
        if (auto q = automaton.transition(sym, {}))
            offer(*q, step(core, k, sym, {}), sym, {}, 1);
    }

    auto finish = [&](Verdict verdict) {
        outcome.verdict = verdict;
        outcome.stats.distinct_sets = distinct_sets.size();
        outcome.stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return outcome;
    };

    while (!frontier.empty()) {
        if (outcome.stats.pairs_created > budget.max_pairs || bytes > budget.max_bytes)
            return finish(Verdict::BudgetExhausted);

        Pending pending = std::move(frontier.front());
        frontier.pop_front();
        const int index = static_cast<int>(trail.size());
        trail.push_back(RefutationEntry{pending.state, pending.set, pending.symbol,
                                        pending.children});
        sizes.push_back(pending.size);
        ++outcome.stats.pairs_visited;
        distinct_sets.insert(visited_key(0, pending.set, 0));

        if (automaton.is_final(pending.state) && !has_final_witness(core, k, pending.set)) {
            outcome.refutation = trail;
            Term counterexample = reconstruct_counterexample(trail);
            outcome.graph = extract(k, counterexample).graph;
            outcome.counterexample = std::move(counterexample);
            return finish(Verdict::Refuted);
        }

        for (const Symbol& sym : alphabet) {
            switch (sym.arity()) {
                case 1: {
                    TreeAutomaton::State below[1] = {trail[index].state};
                    if (auto q = automaton.transition(sym, below)) {
                        WitnessSet children[1] = {trail[index].set};
                        offer(*q, step(core, k, sym, children), sym, {index},
                              sizes[index] + 1);
                    }
                    break;
                }
                case 2: {
                    // every tuple over the expanded pairs containing the new
                    // one: (j, index) for j <= index, then (index, j) for
                    // j < index
                    for (int j = 0; j <= index; ++j) {
                        TreeAutomaton::State below[2] = {trail[j].state, trail[index].state};
                        if (auto q = automaton.transition(sym, below)) {
                            WitnessSet children[2] = {trail[j].set, trail[index].set};
                            offer(*q, step(core, k, sym, children), sym, {j, index},
                                  sizes[j] + sizes[index] + 1);
                        }
                    }
                    for (int j = 0; j < index; ++j) {
                        TreeAutomaton::State below[2] = {trail[index].state, trail[j].state};
                        if (auto q = automaton.transition(sym, below)) {
                            WitnessSet children[2] = {trail[index].set, trail[j].set};
                            offer(*q, step(core, k, sym, children), sym, {index, j},
                                  sizes[index] + sizes[j] + 1);
                        }
                    }
                    break;
                }
                default:
                    break;
            }
        }
    }
    return finish(Verdict::Holds);
}

}  // namespace

ProofOutcome inclusion_test(const DPCore& core, int k, const SearchBudget& budget) {
    return search(core, k, 0, budget);
}

ProofOutcome bounded_inclusion_test(const DPCore& core, int k, int n,
                                    const SearchBudget& budget) {
    if (n < 1)
        throw std::invalid_argument("size bound must be at least 1");
    return search(core, k, n, budget);
}

Term reconstruct_counterexample(const Refutation& refutation) {
    if (refutation.empty())
        throw std::invalid_argument("empty refutation");
    std::vector<Term> terms;
    terms.reserve(refutation.size());
    for (std::size_t i = 0; i < refutation.size(); ++i) {
        const RefutationEntry& entry = refutation[i];
        std::vector<Term> children;
        for (int j : entry.children) {
            if (j < 0 || static_cast<std::size_t>(j) >= i)
                throw std::invalid_argument("derivation index out of range");
            children.push_back(terms[j]);
        }
        terms.emplace_back(entry.symbol, std::move(children));
    }
    return terms.back();
}

bool verify_refutation(const DPCore& core, int k, const Refutation& refutation) {
    if (refutation.empty())
        return false;
    ActiveSetAutomaton automaton(k);
    for (std::size_t i = 0; i < refutation.size(); ++i) {
        const RefutationEntry& entry = refutation[i];
        if (static_cast<int>(entry.children.size()) != entry.symbol.arity())
            return false;
        std::vector<TreeAutomaton::State> below;
        std::vector<WitnessSet> sets;
        for (int j : entry.children) {
            if (j < 0 || static_cast<std::size_t>(j) >= i)
                return false;
            below.push_back(refutation[j].state);
            sets.push_back(refutation[j].set);
        }
        std::optional<TreeAutomaton::State> q;
        try {
            q = automaton.transition(entry.symbol, below);
        } catch (const StructuralError&) {
            return false;
        }
        if (!q || *q != entry.state)
            return false;
        if (!(step(core, k, entry.symbol, sets) == entry.set))
            return false;
    }
    const RefutationEntry& last = refutation.back();
    return automaton.is_final(last.state) && !has_final_witness(core, k, last.set);
}

std::string refutation_to_json(const DPCore& core, int k, const Refutation& refutation) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < refutation.size(); ++i) {
        const RefutationEntry& entry = refutation[i];
        BitString bits = serialize_witness_set(core, k, entry.set);
        nlohmann::json item;
        item["index"] = i;
        item["state"] = entry.state;
        item["witness_set"] = bits.to_base64();
        item["witness_set_bits"] = bits.bit_count();
        item["derivation"] = {{"symbol", entry.symbol.name()},
                              {"child_indices", entry.children}};
        out.push_back(std::move(item));
    }
    return out.dump(2);
}

}  // namespace widthproof
