#ifndef WIDTHPROOF_COMBINATOR_HPP
#define WIDTHPROOF_COMBINATOR_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "widthproof/dpcore.hpp"

namespace widthproof {

/// Boolean function of r acceptance flags and r invariant strings.
struct Combinator {
    int arity = 0;
    std::function<bool(const std::vector<bool>&, const std::vector<BitString>&)> eval;
    std::string description;
};

/// Product core of the constituents under phi: one witness per term, the
/// tuple of constituent witness sets. Finality applies phi to per-core
/// acceptance and invariants; clean and invariant act component-wise.
CorePtr combine(const Combinator& phi, std::vector<CorePtr> cores);

/// A parsed conjecture: distinct atom cores plus the combinator evaluating
/// the original expression over their results.
struct Conjecture {
    std::string text;
    std::vector<CorePtr> cores;
    Combinator phi;

    CorePtr product() const { return combine(phi, cores); }
};

/// Grammar (precedence ! > & > | > ->, right-associative ->):
///   expr := expr "->" expr | expr "|" expr | expr "&" expr | "!" expr | atom
///   atom := CoreName "(" args ")" | CoreName | "inv:" CoreName cmp INT
///         | "(" expr ")"
///   cmp  := "==" | "<=" | ">="
/// Comparison atoms read the core's invariant bytes as a big-endian
/// integer; an undefined invariant compares false.
Conjecture parse_conjecture(const std::string& text);

}  // namespace widthproof

#endif
