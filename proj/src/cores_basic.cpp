#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "widthproof/cores.hpp"

namespace widthproof::cores {

namespace {

// ---------------------------------------------------------------- vertex cover

struct VCWitness {
    std::uint32_t labels = 0;  // bit u-1: label u is in the partial cover
    std::uint64_t covers = 0;  // size of the partial cover
};

class VertexCoverCore final : public DPCore {
public:
    explicit VertexCoverCore(int budget) : budget_(budget) {
        if (budget < 0)
            throw std::invalid_argument("cover budget must be non-negative");
    }
    VertexCoverCore() : budget_(-1) {}  // unbounded

    std::string name() const override {
        return bounded() ? "VertexCover(" + std::to_string(budget_) + ")" : "MinVertexCover";
    }
    bool is_finite() const override { return bounded(); }

    bool is_witness(int k, const BitString& w) const override {
        if (w.bit_count() != width(k))
            return false;
        VCWitness d = decode(k, w);
        if (d.labels >> (k + 1))
            return false;
        return !bounded() || d.covers <= static_cast<std::uint64_t>(budget_);
    }

    bool is_final(int, const BitString&) const override { return true; }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        return WitnessSet::of({encode(k, VCWitness{})});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        VCWitness w = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex: {
                // the fresh vertex may join the partial cover now, so that
                // every compatible boundary trace has its witness
                std::vector<BitString> out{below[0]};
                if (!(w.labels & bit(sym.u)) &&
                    (!bounded() || w.covers < static_cast<std::uint64_t>(budget_))) {
                    VCWitness with = w;
                    with.labels |= bit(sym.u);
                    ++with.covers;
                    out.push_back(encode(k, with));
                }
                return WitnessSet::of(std::move(out));
            }
            case SymbolKind::ForgetVertex:
                w.labels &= ~bit(sym.u);
                return WitnessSet::of({encode(k, w)});
            case SymbolKind::IntroEdge: {
                if (w.labels & (bit(sym.u) | bit(sym.v)))
                    return WitnessSet::of({below[0]});
                if (bounded() && w.covers == static_cast<std::uint64_t>(budget_))
                    return {};
                VCWitness a = w, b = w;
                a.labels |= bit(sym.u);
                b.labels |= bit(sym.v);
                ++a.covers;
                ++b.covers;
                return WitnessSet::of({encode(k, a), encode(k, b)});
            }
            case SymbolKind::Join: {
                VCWitness o = decode(k, below[1]);
                std::uint64_t shared = std::popcount(w.labels & o.labels);
                VCWitness joined;
                joined.labels = w.labels | o.labels;
                joined.covers = w.covers + o.covers - shared;
                if (bounded() && joined.covers > static_cast<std::uint64_t>(budget_))
                    return {};
                return WitnessSet::of({encode(k, joined)});
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
    }

    WitnessSet clean(int k, WitnessSet s) const override {
        std::map<std::uint32_t, std::uint64_t> best;
        for (const BitString& w : s.elems()) {
            VCWitness d = decode(k, w);
            auto it = best.find(d.labels);
            if (it == best.end() || d.covers < it->second)
                best[d.labels] = d.covers;
        }
        std::vector<BitString> keep;
        for (const auto& [labels, covers] : best)
            keep.push_back(encode(k, VCWitness{labels, covers}));
        return WitnessSet::of(std::move(keep));
    }

    BitString invariant(int k, const WitnessSet& s) const override {
        if (s.empty())
            return undefined_invariant();
        std::uint64_t best = ~0ull;
        for (const BitString& w : s.elems())
            best = std::min(best, decode(k, w).covers);
        return BitString::from_integer_bytes(best);
    }

private:
    bool bounded() const { return budget_ >= 0; }
    static std::uint32_t bit(int label) { return 1u << (label - 1); }

    std::size_t width(int k) const {
        return static_cast<std::size_t>(k + 1) + (bounded() ? bit_width_for(budget_) : 32);
    }

    BitString encode(int k, const VCWitness& w) const {
        BitString out;
        out.append_uint(w.labels, k + 1);
        out.append_uint(w.covers, bounded() ? bit_width_for(budget_) : 32);
        return out;
    }

    VCWitness decode(int k, const BitString& w) const {
        BitReader in(w);
        VCWitness d;
        d.labels = static_cast<std::uint32_t>(in.read_uint(k + 1));
        d.covers = in.read_uint(bounded() ? bit_width_for(budget_) : 32);
        return d;
    }

    int budget_;
};

// --------------------------------------------------------------------- simple

class SimpleCore final : public DPCore {
public:
    std::string name() const override { return "Simple"; }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        return w.bit_count() == pair_count(k);
    }
    bool is_final(int, const BitString&) const override { return true; }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        BitString w;
        w.append_uint(0, static_cast<int>(pair_count(k)));
        return WitnessSet::of({w});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        switch (sym.kind) {
            case SymbolKind::IntroVertex:
                return WitnessSet::of({below[0]});
            case SymbolKind::ForgetVertex: {
                BitString out;
                for (int i = 1; i <= k + 1; ++i)
                    for (int j = i + 1; j <= k + 1; ++j)
                        out.push_bit((i == sym.u || j == sym.u)
                                         ? false
                                         : below[0].bit(pair_index(k, i, j)));
                return WitnessSet::of({out});
            }
            case SymbolKind::IntroEdge: {
                std::size_t idx = pair_index(k, sym.u, sym.v);
                if (below[0].bit(idx))
                    return {};  // second edge on the same pair
                BitString out;
                for (std::size_t i = 0; i < pair_count(k); ++i)
                    out.push_bit(i == idx || below[0].bit(i));
                return WitnessSet::of({out});
            }
            case SymbolKind::Join: {
                BitString out;
                for (std::size_t i = 0; i < pair_count(k); ++i) {
                    if (below[0].bit(i) && below[1].bit(i))
                        return {};  // parallel edges created by the glue
                    out.push_bit(below[0].bit(i) || below[1].bit(i));
                }
                return WitnessSet::of({out});
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
    }

private:
    static std::size_t pair_count(int k) {
        return static_cast<std::size_t>(k + 1) * k / 2;
    }
    static std::size_t pair_index(int k, int u, int v) {
        if (u > v)
            std::swap(u, v);
        // pairs (i, j), i < j, in lexicographic order
        std::size_t idx = 0;
        for (int i = 1; i < u; ++i)
            idx += static_cast<std::size_t>(k + 1 - i);
        return idx + static_cast<std::size_t>(v - u - 1);
    }
};

// --------------------------------------------------------------- degree cores

struct DegreeWitness {
    bool found = false;
    std::map<int, int> count;  // active label -> degree, saturating at d+1
};

class DegreeCore final : public DPCore {
public:
    DegreeCore(int d, bool at_least) : d_(d), at_least_(at_least) {
        if (d < 0)
            throw std::invalid_argument("degree bound must be non-negative");
    }

    std::string name() const override {
        return (at_least_ ? "MaxDegGe(" : "MinDegLe(") + std::to_string(d_) + ")";
    }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        BitReader in(w);
        if (w.bit_count() < static_cast<std::size_t>(k + 2))
            return false;
        in.read_bit();
        std::uint64_t mask = in.read_uint(k + 1);
        return w.bit_count() ==
               static_cast<std::size_t>(k + 2) +
                   static_cast<std::size_t>(std::popcount(mask)) * bit_width_for(d_ + 1);
    }

    bool is_final(int k, const BitString& w) const override {
        DegreeWitness deg = decode(k, w);
        if (deg.found)
            return true;
        for (const auto& [label, c] : deg.count)
            if (hits(c))
                return true;
        return false;
    }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        return WitnessSet::of({encode(k, DegreeWitness{})});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        DegreeWitness w = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex:
                w.count[sym.u] = 0;
                break;
            case SymbolKind::ForgetVertex: {
                auto it = w.count.find(sym.u);
                if (it == w.count.end())
                    return {};
                w.found = w.found || hits(it->second);
                w.count.erase(it);
                break;
            }
            case SymbolKind::IntroEdge: {
                if (!w.count.count(sym.u) || !w.count.count(sym.v))
                    return {};
                w.count[sym.u] = saturate(w.count[sym.u] + 1);
                w.count[sym.v] = saturate(w.count[sym.v] + 1);
                break;
            }
            case SymbolKind::Join: {
                DegreeWitness o = decode(k, below[1]);
                auto labels = [](const DegreeWitness& d) {
                    std::vector<int> ls;
                    for (const auto& [l, c] : d.count)
                        ls.push_back(l);
                    return ls;
                };
                if (labels(w) != labels(o))
                    return {};
                for (auto& [label, c] : w.count)
                    c = saturate(c + o.count.at(label));
                w.found = w.found || o.found;
                break;
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
        return WitnessSet::of({encode(k, w)});
    }

private:
    // degree >= d shows as count >= d; degree <= d as count <= d, because
    // counts are exact up to d and saturate at d+1
    bool hits(int count) const { return at_least_ ? count >= d_ : count <= d_; }
    int saturate(int c) const { return std::min(c, d_ + 1); }

    BitString encode(int k, const DegreeWitness& w) const {
        BitString out;
        out.push_bit(w.found);
        std::uint64_t mask = 0;
        for (const auto& [label, c] : w.count)
            mask |= 1ull << (label - 1);
        out.append_uint(mask, k + 1);
        for (const auto& [label, c] : w.count)
            out.append_uint(static_cast<std::uint64_t>(c), bit_width_for(d_ + 1));
        return out;
    }

    DegreeWitness decode(int k, const BitString& w) const {
        BitReader in(w);
        DegreeWitness out;
        out.found = in.read_bit();
        std::uint64_t mask = in.read_uint(k + 1);
        for (int label = 1; label <= k + 1; ++label)
            if (mask & (1ull << (label - 1)))
                out.count[label] = static_cast<int>(in.read_uint(bit_width_for(d_ + 1)));
        return out;
    }

    int d_;
    bool at_least_;
};

// ------------------------------------------------------------------ colorable

class ColorableCore final : public DPCore {
public:
    explicit ColorableCore(int c) : c_(c) {
        if (c < 1)
            throw std::invalid_argument("color count must be positive");
    }

    std::string name() const override { return "Colorable(" + std::to_string(c_) + ")"; }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        if (trivial(k))
            return w.bit_count() == 0;
        if (w.bit_count() != static_cast<std::size_t>(k + 1) * bit_width_for(c_))
            return false;
        for (int u = 1; u <= k + 1; ++u)
            if (color(k, w, u) > c_)
                return false;
        return true;
    }

    bool is_final(int, const BitString&) const override { return true; }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        if (trivial(k))
            return WitnessSet::of({BitString{}});
        std::map<int, int> none;
        return WitnessSet::of({encode(k, none)});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        if (trivial(k))
            return WitnessSet::of({below[0]});
        std::map<int, int> w = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex: {
                std::vector<BitString> out;
                for (int col = 1; col <= c_; ++col) {
                    w[sym.u] = col;
                    out.push_back(encode(k, w));
                }
                return WitnessSet::of(std::move(out));
            }
            case SymbolKind::ForgetVertex:
                w.erase(sym.u);
                return WitnessSet::of({encode(k, w)});
            case SymbolKind::IntroEdge:
                if (w.count(sym.u) && w.count(sym.v) && w.at(sym.u) == w.at(sym.v))
                    return {};
                return WitnessSet::of({below[0]});
            case SymbolKind::Join:
                // colorings of the glued graph restrict to colorings of
                // both halves that agree on all active vertices
                if (below[0] == below[1])
                    return WitnessSet::of({below[0]});
                return {};
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
    }

private:
    // every width-k graph is (k+1)-colorable
    bool trivial(int k) const { return c_ >= k + 1; }

    int color(int k, const BitString& w, int label) const {
        (void)k;
        return static_cast<int>(
            w.read_uint(static_cast<std::size_t>(label - 1) * bit_width_for(c_),
                        bit_width_for(c_)));
    }

    BitString encode(int k, const std::map<int, int>& colors) const {
        BitString out;
        for (int u = 1; u <= k + 1; ++u) {
            auto it = colors.find(u);
            out.append_uint(it == colors.end() ? 0 : static_cast<std::uint64_t>(it->second),
                            bit_width_for(c_));
        }
        return out;
    }

    std::map<int, int> decode(int k, const BitString& w) const {
        std::map<int, int> out;
        for (int u = 1; u <= k + 1; ++u)
            if (int col = color(k, w, u); col != 0)
                out[u] = col;
        return out;
    }

    int c_;
};

}  // namespace

BitString vertex_cover_encode(int k, int budget, std::uint32_t label_mask,
                              std::uint64_t cover_size) {
    BitString out;
    out.append_uint(label_mask, k + 1);
    out.append_uint(cover_size, budget >= 0 ? bit_width_for(budget) : 32);
    return out;
}

CorePtr vertex_cover(int r) { return std::make_shared<VertexCoverCore>(r); }
CorePtr min_vertex_cover() { return std::make_shared<VertexCoverCore>(); }
CorePtr simple() { return std::make_shared<SimpleCore>(); }
CorePtr max_deg_ge(int d) { return std::make_shared<DegreeCore>(d, true); }
CorePtr min_deg_le(int d) { return std::make_shared<DegreeCore>(d, false); }
CorePtr colorable(int c) { return std::make_shared<ColorableCore>(c); }

}  // namespace widthproof::cores
