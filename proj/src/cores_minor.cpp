#include <algorithm>
#include <stdexcept>
#include <vector>

#include "conn_logic.hpp"
#include "widthproof/cores.hpp"

namespace widthproof::cores {

using detail::Cells;
using detail::ConnState;

namespace {

/// Witness of a partial pattern embedding: for each pattern vertex the
/// connectivity state of its branch set restricted to active labels, plus
/// one realized bit per pattern edge. Branch-set supports are pairwise
/// disjoint. Witnesses whose branch set dies (a component loses its last
/// active label while other cells remain) are dropped: they can never
/// become final again.
struct MinorWitness {
    std::vector<ConnState> branch;  // indexed like the sorted pattern vertices
    std::vector<bool> realized;     // indexed like the sorted pattern edges
};

class MinorCore final : public DPCore {
public:
    MinorCore(Multigraph pattern, std::string tag) : pattern_(std::move(pattern)) {
        for (int v : pattern_.vertices())
            pattern_vertices_.push_back(v);
        for (const auto& [e, ends] : pattern_.edges())
            pattern_edges_.push_back(e);
        name_ = "Minor(" + (tag.empty() ? describe() : tag) + ")";
    }

    std::string name() const override { return name_; }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        try {
            MinorWitness d = decode(k, w);
            (void)d;
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }

    bool is_final(int k, const BitString& bits) const override {
        MinorWitness w = decode(k, bits);
        for (bool b : w.realized)
            if (!b)
                return false;
        for (const ConnState& s : w.branch)
            if (s.q == 3 || detail::cell_count(s.cells) > 1)
                return false;
        return true;
    }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        MinorWitness w;
        w.branch.assign(pattern_vertices_.size(), ConnState(k + 1));
        w.realized.assign(pattern_edges_.size(), false);
        return WitnessSet::of({encode(k, w)});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        MinorWitness w = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex: {
                std::vector<BitString> out;
                out.push_back(below[0]);  // the new vertex joins no branch set
                for (std::size_t x = 0; x < w.branch.size(); ++x) {
                    MinorWitness assigned = w;
                    assigned.branch[x].add_singleton(sym.u);
                    if (assigned.branch[x].q == 3)
                        continue;  // that branch set is already finished
                    out.push_back(encode(k, assigned));
                }
                return WitnessSet::of(std::move(out));
            }
            case SymbolKind::ForgetVertex: {
                int x = owner(w, sym.u);
                if (x < 0)
                    return WitnessSet::of({below[0]});
                w.branch[x].forget(sym.u);
                if (w.branch[x].q == 3)
                    return {};  // a branch-set component became unreachable
                return WitnessSet::of({encode(k, w)});
            }
            case SymbolKind::IntroEdge: {
                int xu = owner(w, sym.u);
                int xv = owner(w, sym.v);
                if (xu < 0 || xv < 0)
                    return WitnessSet::of({below[0]});
                if (xu == xv) {
                    w.branch[xu].merge(sym.u, sym.v);
                    return WitnessSet::of({encode(k, w)});
                }
                std::vector<BitString> out;
                out.push_back(below[0]);  // the edge realizes nothing
                int pu = pattern_vertices_[xu];
                int pv = pattern_vertices_[xv];
                for (std::size_t e = 0; e < pattern_edges_.size(); ++e) {
                    if (w.realized[e])
                        continue;
                    std::pair<int, int> key = std::minmax(pu, pv);
                    if (pattern_.endpoints(pattern_edges_[e]) != key)
                        continue;
                    MinorWitness hit = w;
                    hit.realized[e] = true;
                    out.push_back(encode(k, hit));
                }
                return WitnessSet::of(std::move(out));
            }
            case SymbolKind::Join: {
                MinorWitness o = decode(k, below[1]);
                MinorWitness joined;
                joined.realized.assign(pattern_edges_.size(), false);
                for (std::size_t e = 0; e < pattern_edges_.size(); ++e) {
                    if (w.realized[e] && o.realized[e])
                        return {};  // one pattern edge, two witnesses for it
                    joined.realized[e] = w.realized[e] || o.realized[e];
                }
                for (std::size_t x = 0; x < w.branch.size(); ++x) {
                    auto merged = detail::conn_join(w.branch[x], o.branch[x]);
                    if (!merged || merged->q == 3)
                        return {};
                    joined.branch.push_back(*merged);
                }
                return WitnessSet::of({encode(k, joined)});
            }
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
    }

private:
    int owner(const MinorWitness& w, int label) const {
        for (std::size_t x = 0; x < w.branch.size(); ++x)
            if (w.branch[x].has(label))
                return static_cast<int>(x);
        return -1;
    }

    std::string describe() const {
        return std::to_string(pattern_.vertex_count()) + "v" +
               std::to_string(pattern_.edge_count()) + "e";
    }

    // Layout: per pattern vertex 2 bits q; per pattern edge 1 bit realized;
    // then a delimiter stream of 2-bit tags (0 '|' opens the next branch
    // set, 1 ':' separates cells, 2 label followed by the label value).
    BitString encode(int k, const MinorWitness& w) const {
        BitString out;
        for (const ConnState& s : w.branch)
            out.append_uint(static_cast<std::uint64_t>(s.q), 2);
        for (bool b : w.realized)
            out.push_bit(b);
        for (const ConnState& s : w.branch) {
            out.append_uint(0, 2);  // '|'
            int cells = detail::cell_count(s.cells);
            for (int cell = 1; cell <= cells; ++cell) {
                if (cell > 1)
                    out.append_uint(1, 2);  // ':'
                for (int label = 1; label <= k + 1; ++label)
                    if (s.cells[label - 1] == cell) {
                        out.append_uint(2, 2);
                        out.append_uint(static_cast<std::uint64_t>(label - 1),
                                        bit_width_for(k));
                    }
            }
        }
        return out;
    }

    MinorWitness decode(int k, const BitString& bits) const {
        BitReader in(bits);
        MinorWitness w;
        w.branch.assign(pattern_vertices_.size(), ConnState(k + 1));
        for (ConnState& s : w.branch)
            s.q = static_cast<int>(in.read_uint(2));
        w.realized.resize(pattern_edges_.size());
        for (std::size_t e = 0; e < pattern_edges_.size(); ++e)
            w.realized[e] = in.read_bit();
        int x = -1;
        int cell = 0;
        while (!in.done()) {
            switch (in.read_uint(2)) {
                case 0:
                    ++x;
                    cell = 1;
                    break;
                case 1:
                    ++cell;
                    break;
                case 2: {
                    int label = static_cast<int>(in.read_uint(bit_width_for(k))) + 1;
                    if (x < 0 || x >= static_cast<int>(w.branch.size()))
                        throw std::invalid_argument("minor witness stream out of range");
                    w.branch[x].cells[label - 1] = cell;
                    break;
                }
                default:
                    throw std::invalid_argument("bad minor witness tag");
            }
        }
        if (x + 1 != static_cast<int>(w.branch.size()))
            throw std::invalid_argument("minor witness stream truncated");
        return w;
    }

    Multigraph pattern_;
    std::vector<int> pattern_vertices_;
    std::vector<int> pattern_edges_;
    std::string name_;
};

}  // namespace

CorePtr minor(Multigraph pattern, std::string tag) {
    return std::make_shared<MinorCore>(std::move(pattern), std::move(tag));
}

}  // namespace widthproof::cores
