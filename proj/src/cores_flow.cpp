#include <map>
#include <stdexcept>

#include "widthproof/cores.hpp"

namespace widthproof::cores {

namespace {

/// Imbalance of an active vertex: flow into it minus flow out of it, mod m.
/// Forgetting a vertex freezes its flow equation, so the imbalance must be
/// zero by then; orientation is absorbed into the sign of the branch value.
class NZFlowCore final : public DPCore {
public:
    explicit NZFlowCore(int modulus) : m_(modulus) {
        if (modulus < 1)
            throw std::invalid_argument("flow modulus must be positive");
    }

    std::string name() const override { return "NZFlow(" + std::to_string(m_) + ")"; }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        BitReader in(w);
        if (w.bit_count() < static_cast<std::size_t>(k + 1))
            return false;
        std::uint64_t mask = in.read_uint(k + 1);
        std::size_t active = 0;
        for (int u = 0; u <= k; ++u)
            active += (mask >> u) & 1u;
        if (w.bit_count() != static_cast<std::size_t>(k + 1) + active * value_bits())
            return false;
        for (std::size_t i = 0; i < active; ++i)
            if (in.read_uint(value_bits()) >= static_cast<std::uint64_t>(m_))
                return false;
        return true;
    }

    bool is_final(int k, const BitString& w) const override {
        for (const auto& [label, value] : decode(k, w))
            if (value != 0)
                return false;
        return true;
    }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        return WitnessSet::of({encode(k, {})});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        std::map<int, int> w = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex:
                if (w.count(sym.u))
                    return {};
                w[sym.u] = 0;
                return WitnessSet::of({encode(k, w)});
            case SymbolKind::ForgetVertex: {
                auto it = w.find(sym.u);
                if (it == w.end() || it->second != 0)
                    return {};
                w.erase(it);
                return WitnessSet::of({encode(k, w)});
            }
            case SymbolKind::IntroEdge: {
                if (!w.count(sym.u) || !w.count(sym.v))
                    return {};
                std::vector<BitString> out;
                for (int f = 1; f < m_; ++f) {
                    std::map<int, int> next = w;
                    next[sym.u] = (next[sym.u] + f) % m_;
                    next[sym.v] = (next[sym.v] - f % m_ + m_) % m_;
                    out.push_back(encode(k, next));
                }
                return WitnessSet::of(std::move(out));
            }
            case SymbolKind::Join: {
                std::map<int, int> o = decode(k, below[1]);
                auto keys = [](const std::map<int, int>& m) {
                    std::vector<int> ks;
                    for (const auto& [key, value] : m)
                        ks.push_back(key);
                    return ks;
                };
                if (keys(w) != keys(o))
                    return {};
                for (auto& [label, value] : w)
                    value = (value + o.at(label)) % m_;
                return WitnessSet::of({encode(k, w)});
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
    }

    int value_bits() const { return bit_width_for(m_ - 1); }

    BitString encode(int k, const std::map<int, int>& w) const {
        BitString out;
        std::uint64_t mask = 0;
        for (const auto& [label, value] : w)
            mask |= 1ull << (label - 1);
        out.append_uint(mask, k + 1);
        for (const auto& [label, value] : w)
            out.append_uint(static_cast<std::uint64_t>(value), value_bits());
        return out;
    }

    std::map<int, int> decode(int k, const BitString& bits) const {
        BitReader in(bits);
        std::map<int, int> w;
        std::uint64_t mask = in.read_uint(k + 1);
        for (int label = 1; label <= k + 1; ++label)
            if (mask & (1ull << (label - 1)))
                w[label] = static_cast<int>(in.read_uint(value_bits()));
        return w;
    }

    int m_;
};

}  // namespace

CorePtr nzflow(int m) { return std::make_shared<NZFlowCore>(m); }

BitString nzflow_scale(int k, int m, const BitString& witness, int unit) {
    NZFlowCore core(m);
    std::map<int, int> w = core.decode(k, witness);
    for (auto& [label, value] : w)
        value = static_cast<int>((static_cast<long long>(value) * unit) % m);
    return core.encode(k, w);
}

}  // namespace widthproof::cores
