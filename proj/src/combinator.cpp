#include "widthproof/combinator.hpp"

#include <cctype>

#include "widthproof/cores.hpp"

namespace widthproof {

namespace {

class ProductCore final : public DPCore {
public:
    ProductCore(Combinator phi, std::vector<CorePtr> cores)
        : phi_(std::move(phi)), cores_(std::move(cores)) {
        if (static_cast<int>(cores_.size()) != phi_.arity)
            throw std::invalid_argument("combinator arity does not match core count");
        if (cores_.empty())
            throw std::invalid_argument("a combination needs at least one core");
        name_ = "Combine[" + phi_.description + "](";
        for (std::size_t i = 0; i < cores_.size(); ++i)
            name_ += (i ? ", " : "") + cores_[i]->name();
        name_ += ")";
    }

    std::string name() const override { return name_; }

    bool is_finite() const override {
        for (const CorePtr& c : cores_)
            if (!c->is_finite())
                return false;
        return true;
    }

    bool is_witness(int k, const BitString& w) const override {
        std::vector<WitnessSet> parts;
        try {
            parts = decode(w);
        } catch (const std::exception&) {
            return false;
        }
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (const BitString& e : parts[i].elems())
                if (!cores_[i]->is_witness(k, e))
                    return false;
        return true;
    }

    bool is_final(int k, const BitString& w) const override {
        std::vector<WitnessSet> parts = decode(w);
        std::vector<bool> flags;
        std::vector<BitString> invs;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            flags.push_back(has_final_witness(*cores_[i], k, parts[i]));
            invs.push_back(cores_[i]->invariant(k, parts[i]));
        }
        return phi_.eval(flags, invs);
    }

    WitnessSet leaf_set(int k, const Symbol& sym) const override {
        std::vector<WitnessSet> parts;
        for (const CorePtr& c : cores_)
            parts.push_back(step(*c, k, sym, {}));
        return WitnessSet::of({encode(parts)});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        std::vector<std::vector<WitnessSet>> args;
        for (const BitString& b : below)
            args.push_back(decode(b));
        std::vector<WitnessSet> parts;
        for (std::size_t i = 0; i < cores_.size(); ++i) {
            std::vector<WitnessSet> children;
            for (const auto& a : args)
                children.push_back(a[i]);
            parts.push_back(step(*cores_[i], k, sym, children));
        }
        return WitnessSet::of({encode(parts)});
    }

    WitnessSet clean(int k, WitnessSet s) const override {
        std::vector<BitString> out;
        for (const BitString& w : s.elems()) {
            std::vector<WitnessSet> parts = decode(w);
            for (std::size_t i = 0; i < parts.size(); ++i)
                parts[i] = cores_[i]->clean(k, std::move(parts[i]));
            out.push_back(encode(parts));
        }
        return WitnessSet::of(std::move(out));
    }

    BitString invariant(int k, const WitnessSet& s) const override {
        if (s.empty())
            return undefined_invariant();
        std::vector<WitnessSet> parts = decode(s.elems().front());
        BitString out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            BitString inv = cores_[i]->invariant(k, parts[i]);
            out.append_uint(inv.bit_count(), 32);
            out.append(inv);
        }
        return out;
    }

private:
    BitString encode(const std::vector<WitnessSet>& parts) const {
        BitString out;
        for (const WitnessSet& s : parts)
            out.append(s.serialize());
        return out;
    }

    std::vector<WitnessSet> decode(const BitString& w) const {
        BitReader in(w);
        std::vector<WitnessSet> parts;
        for (std::size_t i = 0; i < cores_.size(); ++i)
            parts.push_back(WitnessSet::deserialize(in));
        if (!in.done())
            throw std::invalid_argument("trailing bits in product witness");
        return parts;
    }

    Combinator phi_;
    std::vector<CorePtr> cores_;
    std::string name_;
};

// ---------------------------------------------------------- conjecture parser

struct Node {
    enum class Kind { Atom, InvCmp, Not, And, Or, Implies } kind;
    int core = 0;                       // Atom / InvCmp
    std::string cmp;                    // InvCmp
    std::uint64_t bound = 0;            // InvCmp
    std::unique_ptr<Node> lhs, rhs;     // Not uses lhs only
};

struct ConjectureParser {
    const std::string& text;
    std::size_t pos = 0;
    std::vector<CorePtr> cores;
    std::vector<std::string> core_names;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(const std::string& token) {
        skip_ws();
        if (text.compare(pos, token.size(), token) == 0) {
            pos += token.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("conjecture: " + msg, pos);
    }

    int bind_core(const std::string& spec) {
        for (std::size_t i = 0; i < core_names.size(); ++i)
            if (core_names[i] == spec)
                return static_cast<int>(i);
        core_names.push_back(spec);
        cores.push_back(cores::make_core(spec));
        return static_cast<int>(cores.size() - 1);
    }

    std::string core_spec() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos)
            fail("expected a core name");
        std::string spec = text.substr(start, pos - start);
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            int depth = 0;
            std::size_t open = pos;
            do {
                if (pos >= text.size())
                    fail("unbalanced core argument list");
                if (text[pos] == '(')
                    ++depth;
                if (text[pos] == ')')
                    --depth;
                ++pos;
            } while (depth > 0);
            spec += text.substr(open, pos - open);
        }
        return spec;
    }

    std::unique_ptr<Node> atom() {
        skip_ws();
        if (eat("(")) {
            auto inner = implication();
            if (!eat(")"))
                fail("expected ')'");
            return inner;
        }
        if (eat("inv:")) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::InvCmp;
            node->core = bind_core(core_spec());
            skip_ws();
            if (eat("=="))
                node->cmp = "==";
            else if (eat("<="))
                node->cmp = "<=";
            else if (eat(">="))
                node->cmp = ">=";
            else
                fail("expected ==, <= or >=");
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (start == pos)
                fail("expected an integer bound");
            node->bound = std::stoull(text.substr(start, pos - start));
            return node;
        }
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Atom;
        node->core = bind_core(core_spec());
        return node;
    }

    std::unique_ptr<Node> negation() {
        if (eat("!")) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::Not;
            node->lhs = negation();
            return node;
        }
        return atom();
    }

    std::unique_ptr<Node> conjunction() {
        auto lhs = negation();
        while (eat("&")) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::And;
            node->lhs = std::move(lhs);
            node->rhs = negation();
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<Node> disjunction() {
        auto lhs = conjunction();
        while (eat("|")) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::Or;
            node->lhs = std::move(lhs);
            node->rhs = conjunction();
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<Node> implication() {
        auto lhs = disjunction();
        if (eat("->")) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::Implies;
            node->lhs = std::move(lhs);
            node->rhs = implication();  // right-associative
            return node;
        }
        return lhs;
    }
};

bool eval_node(const Node& n, const std::vector<bool>& flags, const std::vector<BitString>& invs) {
    switch (n.kind) {
        case Node::Kind::Atom:
            return flags[n.core];
        case Node::Kind::InvCmp: {
            const BitString& inv = invs[n.core];
            if (inv.empty())
                return false;  // undefined invariant
            std::uint64_t value = inv.to_integer();
            if (n.cmp == "==")
                return value == n.bound;
            if (n.cmp == "<=")
                return value <= n.bound;
            return value >= n.bound;
        }
        case Node::Kind::Not:
            return !eval_node(*n.lhs, flags, invs);
        case Node::Kind::And:
            return eval_node(*n.lhs, flags, invs) && eval_node(*n.rhs, flags, invs);
        case Node::Kind::Or:
            return eval_node(*n.lhs, flags, invs) || eval_node(*n.rhs, flags, invs);
        case Node::Kind::Implies:
            return !eval_node(*n.lhs, flags, invs) || eval_node(*n.rhs, flags, invs);
    }
    return false;
}

}  // namespace

CorePtr combine(const Combinator& phi, std::vector<CorePtr> cores) {
    return std::make_shared<ProductCore>(phi, std::move(cores));
}

Conjecture parse_conjecture(const std::string& text) {
    ConjectureParser parser{text, 0, {}, {}};
    auto root = parser.implication();
    parser.skip_ws();
    if (parser.pos != text.size())
        throw ParseError("conjecture: trailing input", parser.pos);

    Conjecture out;
    out.text = text;
    out.cores = parser.cores;
    auto shared_root = std::shared_ptr<Node>(std::move(root));
    out.phi.arity = static_cast<int>(out.cores.size());
    out.phi.description = text;
    out.phi.eval = [shared_root](const std::vector<bool>& flags,
                                 const std::vector<BitString>& invs) {
        return eval_node(*shared_root, flags, invs);
    };
    return out;
}

}  // namespace widthproof
