#ifndef WIDTHPROOF_ITD_HPP
#define WIDTHPROOF_ITD_HPP

#include <map>
#include <string>
#include <vector>

#include "widthproof/graph.hpp"
#include "widthproof/term.hpp"

namespace widthproof {

/// The instruction alphabet at width k: Leaf, IntroVertex_u, ForgetVertex_u,
/// IntroEdge_{u,v} (ordered pairs, u != v) and Join, labels in [k+1].
class InstructiveAlphabet {
public:
    explicit InstructiveAlphabet(int k);

    int k() const { return k_; }
    int label_count() const { return k_ + 1; }

    /// All symbols in canonical order. |symbols| = 3(k+1) + (k+1)k + 2.
    std::vector<Symbol> symbols() const;
    bool contains(const Symbol& symbol) const;

private:
    int k_;
};

/// Validity automaton over the width-k instruction alphabet. States are
/// bitmasks of active labels (bit u-1 for label u), all states are final,
/// and transitions are computed on demand:
///   Leaf -> {}, IntroVertex_u needs u inactive, ForgetVertex_u needs u
///   active, IntroEdge_{u,v} needs both active, Join needs equal states.
class ActiveSetAutomaton final : public TreeAutomaton {
public:
    explicit ActiveSetAutomaton(int k);

    int k() const { return k_; }

    std::vector<Symbol> alphabet() const override;
    std::optional<State> transition(const Symbol& symbol,
                                    std::span<const State> below) const override;
    bool is_final(State) const override { return true; }

    static std::vector<int> labels_of(State state);

private:
    int k_;
};

/// True iff the term is a valid width-k instruction sequence.
bool validate(int k, const Term& t);

struct TermValidationError : std::runtime_error {
    TermValidationError(const std::string& msg, Term failing_node);
    Term failing_node;
};

struct ExtractionResult {
    Multigraph graph;
    /// Injective map from the active labels to vertices of `graph`.
    std::map<int, int> top_map;
};

/// Builds the graph encoded by a valid term. New vertices get id |V|+1, new
/// edges id |E|+1, and Join glues the operands, so the result is
/// reproducible bit for bit. Throws TermValidationError at the first node
/// whose instruction is not applicable.
ExtractionResult extract(int k, const Term& t);

/// Smallest k such that the term is valid at width k. Validity only depends
/// on the labels used, so this is determined by the maximum label; throws
/// TermValidationError if the term is valid at no width.
int term_width(const Term& t);

/// True iff the term contains no Join (a path decomposition).
bool is_path_decomposition(const Term& t);

/// Nice edge-introducing tree decomposition: a rooted tree of typed nodes
/// with bags over the host graph's vertices, where each edge is introduced
/// at exactly one IntroEdge node.
struct NiceNode {
    enum class Type { Leaf, IntroVertex, ForgetVertex, IntroEdge, Join };
    int id = 0;
    Type type = Type::Leaf;
    std::vector<int> bag;        // sorted vertex ids
    std::vector<int> children;   // node ids
    int vertex = 0;              // introduced/forgotten vertex
    int edge = 0;                // introduced edge id
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = 0;

    const NiceNode& node(int id) const;

    /// Checks the tree-decomposition conditions against the host graph plus
    /// the per-node-type constraints; throws std::invalid_argument with a
    /// description on violation.
    void check(const Multigraph& g) const;

    int width() const;
};

NiceTreeDecomposition nice_decomposition_from_json(const std::string& text);
std::string to_json(const NiceTreeDecomposition& d);

/// Converts a valid nice edge-introducing tree decomposition of g of width
/// <= k into a term t with extract(k, t).graph isomorphic to g. The greedy
/// root-to-leaf bag-injective coloring picks, for each newly seen vertex,
/// the first free label in label_order (defaults to 1..k+1).
Term from_nice_decomposition(const Multigraph& g, const NiceTreeDecomposition& d, int k,
                             const std::vector<int>& label_order = {});

/// Mechanical inverse used by tests and the coherency suite: the term's own
/// node structure read as a nice tree decomposition of extract(k, t).graph.
NiceTreeDecomposition nice_decomposition_from_term(int k, const Term& t);

}  // namespace widthproof

#endif
