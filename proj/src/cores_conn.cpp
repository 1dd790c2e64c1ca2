#include <bit>
#include <stdexcept>

#include "conn_logic.hpp"
#include "widthproof/cores.hpp"

namespace widthproof::cores {

using detail::Cells;
using detail::ConnState;

namespace {

void append_cells(BitString& out, const Cells& cells, int k) {
    for (int u = 1; u <= k + 1; ++u)
        out.append_uint(static_cast<std::uint64_t>(cells[u - 1]), bit_width_for(k + 1));
}

Cells read_cells(BitReader& in, int k) {
    Cells cells(k + 1, 0);
    for (int u = 1; u <= k + 1; ++u)
        cells[u - 1] = static_cast<int>(in.read_uint(bit_width_for(k + 1)));
    return cells;
}

// ----------------------------------------------------------------- connected

class ConnCore final : public DPCore {
public:
    std::string name() const override { return "Conn"; }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        return w.bit_count() ==
               2 + static_cast<std::size_t>(k + 1) * bit_width_for(k + 1);
    }

    bool is_final(int k, const BitString& w) const override {
        ConnState s = decode(k, w);
        return s.q != 3 && detail::cell_count(s.cells) <= 1;
    }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        return WitnessSet::of({encode(k, ConnState(k + 1))});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        ConnState s = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex:
                if (s.has(sym.u))
                    return {};
                s.add_singleton(sym.u);
                break;
            case SymbolKind::ForgetVertex:
                if (!s.has(sym.u))
                    return {};
                s.forget(sym.u);
                break;
            case SymbolKind::IntroEdge:
                if (!s.has(sym.u) || !s.has(sym.v))
                    return {};
                s.merge(sym.u, sym.v);
                break;
            case SymbolKind::Join: {
                auto joined = detail::conn_join(s, decode(k, below[1]));
                if (!joined)
                    return {};
                s = *joined;
                break;
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
        return WitnessSet::of({encode(k, s)});
    }

private:
    BitString encode(int k, const ConnState& s) const {
        BitString out;
        out.append_uint(static_cast<std::uint64_t>(s.q), 2);
        append_cells(out, s.cells, k);
        return out;
    }

    ConnState decode(int k, const BitString& w) const {
        BitReader in(w);
        ConnState s(k + 1);
        s.q = static_cast<int>(in.read_uint(2));
        s.cells = read_cells(in, k);
        return s;
    }
};

// ------------------------------------------------ deletion connectivity cores

/// Shared shape of the vertex- and edge-deletion cores: a deletion budget r
/// plus the connectivity state of the graph with the deleted elements
/// removed. A witness is final as soon as that graph is disconnected (q=3,
/// a component lost all active labels, or >= 2 cells remain).
class DeletionConnCore final : public DPCore {
public:
    DeletionConnCore(int budget, bool delete_vertices)
        : budget_(budget), vertices_(delete_vertices) {
        if (budget < 0)
            throw std::invalid_argument("deletion budget must be non-negative");
    }

    std::string name() const override {
        return (vertices_ ? "VConnLe(" : "EConnLe(") + std::to_string(budget_) + ")";
    }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        return w.bit_count() == width(k);
    }

    bool is_final(int k, const BitString& w) const override {
        Witness s = decode(k, w);
        return s.state.q == 3 || detail::cell_count(s.state.cells) >= 2;
    }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        return WitnessSet::of({encode(k, Witness{0, 0, ConnState(k + 1)})});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        Witness w = decode(k, below[0]);
        std::vector<BitString> out;
        switch (sym.kind) {
            case SymbolKind::IntroVertex: {
                if (w.state.has(sym.u) || (w.deleted & bit(sym.u)))
                    return {};
                Witness kept = w;
                kept.state.add_singleton(sym.u);
                out.push_back(encode(k, kept));
                if (vertices_ && w.removed < budget_) {
                    Witness dropped = w;
                    ++dropped.removed;
                    dropped.deleted |= bit(sym.u);
                    out.push_back(encode(k, dropped));
                }
                break;
            }
            case SymbolKind::ForgetVertex: {
                if (w.deleted & bit(sym.u)) {
                    w.deleted &= ~bit(sym.u);
                    out.push_back(encode(k, w));
                } else if (w.state.has(sym.u)) {
                    w.state.forget(sym.u);
                    out.push_back(encode(k, w));
                }
                break;
            }
            case SymbolKind::IntroEdge: {
                bool u_gone = (w.deleted & bit(sym.u)) != 0;
                bool v_gone = (w.deleted & bit(sym.v)) != 0;
                if (!u_gone && !w.state.has(sym.u))
                    return {};
                if (!v_gone && !w.state.has(sym.v))
                    return {};
                if (u_gone || v_gone) {
                    out.push_back(below[0]);  // edge vanished with its endpoint
                    break;
                }
                Witness kept = w;
                kept.state.merge(sym.u, sym.v);
                out.push_back(encode(k, kept));
                if (!vertices_ && w.removed < budget_) {
                    Witness dropped = w;
                    ++dropped.removed;
                    out.push_back(encode(k, dropped));
                }
                break;
            }
            case SymbolKind::Join: {
                Witness o = decode(k, below[1]);
                if (w.deleted != o.deleted)
                    return {};
                auto joined = detail::conn_join(w.state, o.state);
                if (!joined)
                    return {};
                // vertex deletions on the shared boundary are counted once
                int shared = vertices_ ? std::popcount(w.deleted) : 0;
                int removed = w.removed + o.removed - shared;
                if (removed > budget_)
                    return {};
                out.push_back(encode(k, Witness{removed, w.deleted, *joined}));
                break;
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
        return WitnessSet::of(std::move(out));
    }

private:
    struct Witness {
        int removed = 0;
        std::uint32_t deleted = 0;  // active labels whose vertex was deleted
        ConnState state;
    };

    static std::uint32_t bit(int label) { return 1u << (label - 1); }

    std::size_t width(int k) const {
        return 2 + static_cast<std::size_t>(bit_width_for(budget_)) +
               static_cast<std::size_t>(k + 1) * (1 + bit_width_for(k + 1));
    }

    BitString encode(int k, const Witness& w) const {
        BitString out;
        out.append_uint(static_cast<std::uint64_t>(w.state.q), 2);
        out.append_uint(static_cast<std::uint64_t>(w.removed), bit_width_for(budget_));
        out.append_uint(w.deleted, k + 1);
        append_cells(out, w.state.cells, k);
        return out;
    }

    Witness decode(int k, const BitString& w) const {
        BitReader in(w);
        Witness out;
        out.state = ConnState(k + 1);
        out.state.q = static_cast<int>(in.read_uint(2));
        out.removed = static_cast<int>(in.read_uint(bit_width_for(budget_)));
        out.deleted = static_cast<std::uint32_t>(in.read_uint(k + 1));
        out.state.cells = read_cells(in, k);
        return out;
    }

    int budget_;
    bool vertices_;
};

}  // namespace

CorePtr conn() { return std::make_shared<ConnCore>(); }
CorePtr vconn_le(int c) { return std::make_shared<DeletionConnCore>(c, true); }
CorePtr econn_le(int c) { return std::make_shared<DeletionConnCore>(c, false); }

}  // namespace widthproof::cores
