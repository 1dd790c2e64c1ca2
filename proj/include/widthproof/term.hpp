#ifndef WIDTHPROOF_TERM_HPP
#define WIDTHPROOF_TERM_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace widthproof {

enum class SymbolKind : std::uint8_t { Leaf, IntroVertex, ForgetVertex, IntroEdge, Join };

/// One symbol of the instruction alphabet. Labels are 1-based; Leaf and Join
/// carry none, IntroVertex/ForgetVertex carry one, IntroEdge carries an
/// ordered pair of distinct labels.
///
/// The default comparison (kind, then labels) is the canonical symbol order
/// used everywhere determinism matters: Leaf < IntroVertex_1 < ... <
/// ForgetVertex_1 < ... < IntroEdge_{1,2} < ... < Join.
struct Symbol {
    SymbolKind kind = SymbolKind::Leaf;
    int u = 0;
    int v = 0;

    static Symbol leaf() { return {SymbolKind::Leaf, 0, 0}; }
    static Symbol intro_vertex(int u) { return {SymbolKind::IntroVertex, u, 0}; }
    static Symbol forget_vertex(int u) { return {SymbolKind::ForgetVertex, u, 0}; }
    static Symbol intro_edge(int u, int v) { return {SymbolKind::IntroEdge, u, v}; }
    static Symbol join() { return {SymbolKind::Join, 0, 0}; }

    int arity() const {
        switch (kind) {
            case SymbolKind::Leaf: return 0;
            case SymbolKind::Join: return 2;
            default: return 1;
        }
    }

    std::string name() const;

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Immutable ranked term. Value type over a shared node, so copies are cheap
/// and structurally equal subterms built by the enumerator share storage.
class Term {
public:
    explicit Term(Symbol symbol, std::vector<Term> children = {});

    const Symbol& symbol() const { return node_->symbol; }
    std::span<const Term> children() const { return node_->children; }
    std::size_t size() const { return node_->size; }
    int height() const { return node_->height; }

    /// Node identity; stable key for memoizing folds over shared subterms.
    const void* id() const { return node_.get(); }

    bool operator==(const Term& other) const;

private:
    struct Node {
        Symbol symbol;
        std::vector<Term> children;
        std::size_t size;
        int height;
    };
    std::shared_ptr<const Node> node_;
};

/// Size-lexicographic order: size first, then root symbol in canonical
/// order, then children left to right. Fixes enumeration output.
std::strong_ordering term_order(const Term& a, const Term& b);

std::string to_string(const Term& t);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position);
    std::size_t position;
};

/// Parses the s-expression term format, e.g.
/// (IntroEdge 1 2 (IntroVertex 2 (IntroVertex 1 (Leaf)))).
Term parse_term(const std::string& text);

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic bottom-up tree automaton with partial transitions.
/// An undefined transition rejects; there is no sink state.
class TreeAutomaton {
public:
    using State = std::uint32_t;

    virtual ~TreeAutomaton() = default;

    /// Alphabet in canonical symbol order.
    virtual std::vector<Symbol> alphabet() const = 0;

    /// The unique successor state, or nullopt when undefined. Throws
    /// StructuralError if the symbol is not in the alphabet or the tuple
    /// length does not match its arity.
    virtual std::optional<State> transition(const Symbol& symbol,
                                            std::span<const State> below) const = 0;

    virtual bool is_final(State state) const = 0;
};

/// Explicit transition-table automaton, for tests and small languages.
class TableAutomaton final : public TreeAutomaton {
public:
    TableAutomaton(std::vector<Symbol> alphabet, std::vector<State> final_states);

    void add_transition(const Symbol& symbol, std::vector<State> below, State target);

    std::vector<Symbol> alphabet() const override { return alphabet_; }
    std::optional<State> transition(const Symbol& symbol,
                                    std::span<const State> below) const override;
    bool is_final(State state) const override;

private:
    std::vector<Symbol> alphabet_;
    std::vector<State> final_states_;
    std::map<std::pair<Symbol, std::vector<State>>, State> table_;
};

/// Bottom-up run; nullopt when some transition along the way is undefined.
std::optional<TreeAutomaton::State> run(const TreeAutomaton& automaton, const Term& t);

bool accepts(const TreeAutomaton& automaton, const Term& t);

/// Every accepted term of size <= max_size, exactly once, in
/// size-lexicographic order. Subterms are shared between yielded terms.
/// Throws std::length_error when more than max_terms would be produced.
std::vector<Term> enumerate_accepted_terms(const TreeAutomaton& automaton, int max_size,
                                           std::size_t max_terms = 2'000'000);

/// Post-order visit of each distinct node (by identity) exactly once.
void for_each_subterm(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace widthproof

#endif
