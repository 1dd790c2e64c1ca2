#include "widthproof/dpcore.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>

#include "widthproof/itd.hpp"

namespace widthproof {

WitnessSet WitnessSet::of(std::vector<BitString> elems) {
    WitnessSet s;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.elems_ = std::move(elems);
    return s;
}

void WitnessSet::insert(BitString w) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), w);
    if (it == elems_.end() || !(*it == w))
        elems_.insert(it, std::move(w));
}

bool WitnessSet::contains(const BitString& w) const {
    return std::binary_search(elems_.begin(), elems_.end(), w);
}

BitString WitnessSet::serialize() const {
    BitString out;
    out.append_uint(elems_.size(), 32);
    for (const BitString& w : elems_) {
        out.append_uint(w.bit_count(), 32);
        out.append(w);
    }
    return out;
}

WitnessSet WitnessSet::deserialize(BitReader& in) {
    std::uint64_t count = in.read_uint(32);
    std::vector<BitString> elems;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t nbits = in.read_uint(32);
        BitString w;
        for (std::uint64_t b = 0; b < nbits; ++b)
            w.push_bit(in.read_bit());
        elems.push_back(std::move(w));
    }
    return WitnessSet::of(std::move(elems));
}

// Whether a rejecting set is empty or merely final-free can depend on the
// decomposition, so the default invariant must not separate those cases.
BitString DPCore::invariant(int k, const WitnessSet& s) const {
    if (!has_final_witness(*this, k, s))
        return undefined_invariant();
    BitString out;
    out.append_uint(1, 8);
    return out;
}

bool has_final_witness(const DPCore& core, int k, const WitnessSet& s) {
    for (const BitString& w : s.elems())
        if (core.is_final(k, w))
            return true;
    return false;
}

namespace {
std::atomic<std::chrono::milliseconds::rep> g_step_budget_ms{10'000};
}  // namespace

void set_step_time_budget(std::chrono::milliseconds budget) {
    g_step_budget_ms.store(budget.count());
}

WitnessSet step(const DPCore& core, int k, const Symbol& symbol,
                std::span<const WitnessSet> children) {
    if (static_cast<int>(children.size()) != symbol.arity())
        throw StructuralError("step: child count does not match arity of " + symbol.name());
    if (!InstructiveAlphabet(k).contains(symbol))
        throw StructuralError("step: symbol outside the width-" + std::to_string(k) +
                              " alphabet: " + symbol.name());
    const auto started = std::chrono::steady_clock::now();
    const auto budget_ms = g_step_budget_ms.load();
    WitnessSet out;
    switch (symbol.arity()) {
        case 0:
            out = core.leaf_set(k, symbol);
            break;
        case 1:
            for (const BitString& w : children[0].elems()) {
                const BitString below[1] = {w};
                WitnessSet produced = core.transition(k, symbol, below);
                for (const BitString& r : produced.elems())
                    out.insert(r);
            }
            break;
        case 2:
            for (const BitString& a : children[0].elems())
                for (const BitString& b : children[1].elems()) {
                    const BitString below[2] = {a, b};
                    WitnessSet produced = core.transition(k, symbol, below);
                    for (const BitString& r : produced.elems())
                        out.insert(r);
                }
            break;
        default:
            throw StructuralError("unsupported arity");
    }
    if (budget_ms > 0 &&
        std::chrono::steady_clock::now() - started > std::chrono::milliseconds(budget_ms))
        throw std::runtime_error("step time budget exceeded at " + symbol.name());
    return core.clean(k, std::move(out));
}

WitnessSet dynamize(const DPCore& core, int k, const Term& t, DynamizeMemo* memo) {
    DynamizeMemo local;
    DynamizeMemo& table = memo ? *memo : local;
    for_each_subterm(t, [&](const Term& node) {
        if (table.count(node.id()))
            return;
        std::vector<WitnessSet> children;
        for (const Term& c : node.children())
            children.push_back(table.at(c.id()));
        table[node.id()] = step(core, k, node.symbol(), children);
    });
    return table.at(t.id());
}

bool accepts(const DPCore& core, int k, const Term& t, DynamizeMemo* memo) {
    return has_final_witness(core, k, dynamize(core, k, t, memo));
}

ModelCheckResult model_check(const DPCore& core, int k, const Term& t, DynamizeMemo* memo) {
    if (!validate(k, t))
        throw TermValidationError("model_check needs a valid width-" + std::to_string(k) +
                                      " term",
                                  t);
    WitnessSet s = dynamize(core, k, t, memo);
    return ModelCheckResult{has_final_witness(core, k, s), core.invariant(k, s)};
}

bool ComplexityReport::inequalities_hold() const {
    if (mu > nu)
        return false;
    if (beta < 64 && nu > (1ull << beta))
        return false;
    // delta <= 2 * nu^mu
    long double bound = 2.0L;
    bool overflowed = false;
    for (std::size_t i = 0; i < mu && !overflowed; ++i) {
        bound *= static_cast<long double>(nu);
        if (bound > 1e30L)
            overflowed = true;
    }
    if (!overflowed && static_cast<long double>(delta) > bound)
        return false;
    if (nu < 64 && delta > (1ull << nu))
        return false;
    return true;
}

ComplexityReport measure_complexity(const DPCore& core, int k, int n, std::size_t max_terms) {
    ActiveSetAutomaton automaton(k);
    std::vector<Term> terms = enumerate_accepted_terms(automaton, n, max_terms);

    ComplexityReport report;
    report.k = k;
    report.n = n;
    report.term_count = terms.size();

    DynamizeMemo memo;
    std::set<BitString> witnesses;
    std::set<BitString> sets;
    for (const Term& t : terms) {
        WitnessSet s = dynamize(core, k, t, &memo);
        report.mu = std::max(report.mu, s.size());
        for (const BitString& w : s.elems()) {
            report.beta = std::max(report.beta, w.bit_count());
            witnesses.insert(w);
        }
        sets.insert(s.serialize());
    }
    report.nu = witnesses.size();
    report.delta = sets.size();
    return report;
}

std::size_t witness_bitlength(const BitString& w) { return w.bit_count(); }

BitString serialize_witness_set(const DPCore& core, int k, const WitnessSet& s) {
    BitString out;
    const std::string name = core.name();
    out.append_uint(name.size(), 16);
    for (char c : name)
        out.append_uint(static_cast<unsigned char>(c), 8);
    out.append_uint(static_cast<std::uint64_t>(k), 16);
    out.append(s.serialize());
    return out;
}

namespace {

class TrivialCleanCore final : public DPCore {
public:
    explicit TrivialCleanCore(CorePtr inner) : inner_(std::move(inner)) {}

    std::string name() const override { return inner_->name() + "/dedup-clean"; }
    bool is_finite() const override { return inner_->is_finite(); }
    bool is_witness(int k, const BitString& w) const override { return inner_->is_witness(k, w); }
    bool is_final(int k, const BitString& w) const override { return inner_->is_final(k, w); }
    WitnessSet leaf_set(int k, const Symbol& s) const override { return inner_->leaf_set(k, s); }
    WitnessSet transition(int k, const Symbol& s,
                          std::span<const BitString> below) const override {
        return inner_->transition(k, s, below);
    }
    WitnessSet clean(int k, WitnessSet s) const override {
        (void)k;
        return s;
    }
    BitString invariant(int k, const WitnessSet& s) const override {
        return inner_->invariant(k, s);
    }

private:
    CorePtr inner_;
};

}  // namespace

CorePtr with_trivial_clean(CorePtr core) {
    return std::make_shared<TrivialCleanCore>(std::move(core));
}

}  // namespace widthproof
