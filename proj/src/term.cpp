#include "widthproof/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace widthproof {

std::string Symbol::name() const {
    switch (kind) {
        case SymbolKind::Leaf: return "Leaf";
        case SymbolKind::IntroVertex: return "IntroVertex " + std::to_string(u);
        case SymbolKind::ForgetVertex: return "ForgetVertex " + std::to_string(u);
        case SymbolKind::IntroEdge:
            return "IntroEdge " + std::to_string(u) + " " + std::to_string(v);
        case SymbolKind::Join: return "Join";
    }
    return "?";
}

Term::Term(Symbol symbol, std::vector<Term> children) {
    if (static_cast<int>(children.size()) != symbol.arity())
        throw StructuralError("symbol " + symbol.name() + " expects " +
                              std::to_string(symbol.arity()) + " children, got " +
                              std::to_string(children.size()));
    std::size_t size = 1;
    int height = 0;
    for (const Term& c : children) {
        size += c.size();
        height = std::max(height, c.height() + 1);
    }
    node_ = std::make_shared<const Node>(Node{symbol, std::move(children), size, height});
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_)
        return true;
    if (symbol() != other.symbol() || size() != other.size())
        return false;
    for (std::size_t i = 0; i < node_->children.size(); ++i)
        if (!(node_->children[i] == other.node_->children[i]))
            return false;
    return true;
}

std::strong_ordering term_order(const Term& a, const Term& b) {
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    if (auto c = a.symbol() <=> b.symbol(); c != 0)
        return c;
    for (std::size_t i = 0; i < a.children().size(); ++i)
        if (auto c = term_order(a.children()[i], b.children()[i]); c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::string to_string(const Term& t) {
    std::string out = "(" + t.symbol().name();
    for (const Term& c : t.children())
        out += " " + to_string(c);
    out += ")";
    return out;
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    char peek() {
        skip_ws();
        if (pos >= text.size())
            throw ParseError("unexpected end of input", pos);
        return text[pos];
    }

    void expect(char c) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos]))))
            ++pos;
        if (start == pos)
            throw ParseError("expected a symbol name or label", pos);
        return text.substr(start, pos - start);
    }

    int label() {
        std::size_t at = pos;
        std::string w = word();
        for (char c : w)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("expected an integer label", at);
        long v = std::stol(w);
        if (v < 1)
            throw ParseError("labels start at 1", at);
        return static_cast<int>(v);
    }

    Term term() {
        expect('(');
        std::size_t head_at = pos;
        std::string head = word();
        Symbol sym;
        if (head == "Leaf")
            sym = Symbol::leaf();
        else if (head == "IntroVertex")
            sym = Symbol::intro_vertex(label());
        else if (head == "ForgetVertex")
            sym = Symbol::forget_vertex(label());
        else if (head == "IntroEdge") {
            int u = label();
            int v = label();
            if (u == v)
                throw ParseError("IntroEdge labels must differ", head_at);
            sym = Symbol::intro_edge(u, v);
        } else if (head == "Join")
            sym = Symbol::join();
        else
            throw ParseError("unknown symbol '" + head + "'", head_at);

        std::vector<Term> children;
        while (peek() != ')')
            children.push_back(term());
        expect(')');
        if (static_cast<int>(children.size()) != sym.arity())
            throw ParseError(sym.name() + " expects " + std::to_string(sym.arity()) +
                                 " children, got " + std::to_string(children.size()),
                             head_at);
        return Term(sym, std::move(children));
    }
};

}  // namespace

Term parse_term(const std::string& text) {
    Parser p{text};
    Term t = p.term();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing input after term", p.pos);
    return t;
}

TableAutomaton::TableAutomaton(std::vector<Symbol> alphabet, std::vector<State> final_states)
    : alphabet_(std::move(alphabet)), final_states_(std::move(final_states)) {
    std::sort(alphabet_.begin(), alphabet_.end());
}

void TableAutomaton::add_transition(const Symbol& symbol, std::vector<State> below,
                                    State target) {
    if (static_cast<int>(below.size()) != symbol.arity())
        throw StructuralError("transition tuple length does not match arity of " +
                              symbol.name());
    auto [it, inserted] = table_.emplace(std::make_pair(symbol, std::move(below)), target);
    if (!inserted && it->second != target)
        throw StructuralError("conflicting transition for " + symbol.name());
}

std::optional<TreeAutomaton::State> TableAutomaton::transition(
    const Symbol& symbol, std::span<const State> below) const {
    if (!std::binary_search(alphabet_.begin(), alphabet_.end(), symbol))
        throw StructuralError("symbol not in alphabet: " + symbol.name());
    if (static_cast<int>(below.size()) != symbol.arity())
        throw StructuralError("tuple length does not match arity of " + symbol.name());
    auto it = table_.find(std::make_pair(symbol, std::vector<State>(below.begin(), below.end())));
    if (it == table_.end())
        return std::nullopt;
    return it->second;
}

bool TableAutomaton::is_final(State state) const {
    return std::find(final_states_.begin(), final_states_.end(), state) != final_states_.end();
}

void for_each_subterm(const Term& t, const std::function<void(const Term&)>& visit) {
    std::unordered_set<const void*> seen;
    std::vector<std::pair<Term, bool>> stack;
    stack.emplace_back(t, false);
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (seen.count(node.id()))
            continue;
        if (expanded) {
            seen.insert(node.id());
            visit(node);
        } else {
            stack.emplace_back(node, true);
            auto kids = node.children();
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                stack.emplace_back(*it, false);
        }
    }
}

std::optional<TreeAutomaton::State> run(const TreeAutomaton& automaton, const Term& t) {
    std::map<const void*, std::optional<TreeAutomaton::State>> states;
    std::optional<TreeAutomaton::State> result;
    bool rejected = false;
    for_each_subterm(t, [&](const Term& node) {
        if (rejected)
            return;
        std::vector<TreeAutomaton::State> below;
        for (const Term& c : node.children()) {
            auto s = states.at(c.id());
            if (!s) {
                rejected = true;
                return;
            }
            below.push_back(*s);
        }
        auto next = automaton.transition(node.symbol(), below);
        states[node.id()] = next;
        if (!next)
            rejected = true;
        if (node.id() == t.id())
            result = next;
    });
    return rejected ? std::nullopt : result;
}

bool accepts(const TreeAutomaton& automaton, const Term& t) {
    auto state = run(automaton, t);
    return state && automaton.is_final(*state);
}

std::vector<Term> enumerate_accepted_terms(const TreeAutomaton& automaton, int max_size,
                                           std::size_t max_terms) {
    if (max_size < 1)
        throw std::invalid_argument("max_size must be at least 1");
    const std::vector<Symbol> alphabet = automaton.alphabet();

    // pool[s] holds every term of size s on which the automaton has a run,
    // paired with its state, already in canonical order.
    std::vector<std::vector<std::pair<Term, TreeAutomaton::State>>> pool(
        static_cast<std::size_t>(max_size) + 1);
    std::size_t total = 0;

    auto emit = [&](std::size_t s, Term t, TreeAutomaton::State q) {
        if (++total > max_terms)
            throw std::length_error("term enumeration exceeds budget");
        pool[s].emplace_back(std::move(t), q);
    };

    for (int s = 1; s <= max_size; ++s) {
        for (const Symbol& sym : alphabet) {
            switch (sym.arity()) {
                case 0: {
                    if (s != 1)
                        break;
                    if (auto q = automaton.transition(sym, {}))
                        emit(1, Term(sym), *q);
                    break;
                }
                case 1: {
                    for (const auto& [child, cq] : pool[s - 1]) {
                        TreeAutomaton::State below[1] = {cq};
                        if (auto q = automaton.transition(sym, below))
                            emit(s, Term(sym, {child}), *q);
                    }
                    break;
                }
                case 2: {
                    for (int s1 = 1; s1 <= s - 2; ++s1) {
                        int s2 = s - 1 - s1;
                        for (const auto& [left, lq] : pool[s1]) {
                            for (const auto& [right, rq] : pool[s2]) {
                                TreeAutomaton::State below[2] = {lq, rq};
                                if (auto q = automaton.transition(sym, below))
                                    emit(s, Term(sym, {left, right}), *q);
                            }
                        }
                    }
                    break;
                }
                default:
                    throw StructuralError("unsupported arity");
            }
        }
    }

    std::vector<Term> out;
    out.reserve(total);
    for (int s = 1; s <= max_size; ++s)
        for (auto& [t, q] : pool[s])
            if (automaton.is_final(q))
                out.push_back(t);
    return out;
}

}  // namespace widthproof
