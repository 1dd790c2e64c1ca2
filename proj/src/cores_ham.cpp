#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "widthproof/cores.hpp"

namespace widthproof::cores {

namespace {

/// Partial path systems: each active vertex carries its degree in the
/// system (0, 1 or 2); degree-1 vertices are matched to the other endpoint
/// of their path. Forgotten vertices must be path-internal (degree 2).
/// `done` marks the closed spanning cycle; a pair's long flag records that
/// its path has at least two edges, so closing it yields a cycle on >= 3
/// vertices (two-vertex cycles through parallel edges do not count).
struct HamWitness {
    bool done = false;
    std::map<int, int> deg;               // active label -> 0..2
    std::map<int, int> partner;           // endpoint label -> other endpoint
    std::set<std::pair<int, int>> longs;  // normalized pairs of length >= 2

    bool has(int label) const { return deg.count(label) != 0; }

    static std::pair<int, int> norm(int a, int b) { return std::minmax(a, b); }

    void match(int a, int b, bool is_long) {
        partner[a] = b;
        partner[b] = a;
        if (is_long)
            longs.insert(norm(a, b));
    }

    void unmatch(int a) {
        int b = partner.at(a);
        longs.erase(norm(a, b));
        partner.erase(a);
        partner.erase(b);
    }

    bool pair_long(int a, int b) const { return longs.count(norm(a, b)) != 0; }
};

class HamiltonianCore final : public DPCore {
public:
    std::string name() const override { return "Hamiltonian"; }
    bool is_finite() const override { return true; }

    bool is_witness(int k, const BitString& w) const override {
        return w.bit_count() == width(k);
    }

    bool is_final(int k, const BitString& w) const override { return decode(k, w).done; }

    WitnessSet leaf_set(int k, const Symbol&) const override {
        return WitnessSet::of({encode(k, HamWitness{})});
    }

    WitnessSet transition(int k, const Symbol& sym,
                          std::span<const BitString> below) const override {
        HamWitness w = decode(k, below[0]);
        switch (sym.kind) {
            case SymbolKind::IntroVertex: {
                if (w.done || w.has(sym.u))
                    return {};  // nothing can join a closed cycle
                w.deg[sym.u] = 0;
                return WitnessSet::of({encode(k, w)});
            }
            case SymbolKind::ForgetVertex: {
                if (!w.has(sym.u))
                    return {};
                if (!w.done && w.deg.at(sym.u) != 2)
                    return {};  // an endpoint would be stranded
                w.deg.erase(sym.u);
                return WitnessSet::of({encode(k, w)});
            }
            case SymbolKind::IntroEdge:
                return intro_edge(k, w, sym.u, sym.v);
            case SymbolKind::Join:
                return join(k, w, decode(k, below[1]));
            default:
                throw StructuralError("unexpected symbol " + sym.name());
        }
    }

private:
    WitnessSet intro_edge(int k, const HamWitness& w, int u, int v) const {
        if (!w.has(u) || !w.has(v))
            return {};
        std::vector<BitString> out;
        out.push_back(encode(k, w));  // the edge stays off the cycle
        if (w.done)
            return WitnessSet::of(std::move(out));
        int du = w.deg.at(u);
        int dv = w.deg.at(v);
        if (du == 2 || dv == 2)
            return WitnessSet::of(std::move(out));
        HamWitness used = w;
        if (du == 0 && dv == 0) {
            used.deg[u] = used.deg[v] = 1;
            used.match(u, v, false);
            out.push_back(encode(k, used));
        } else if (du == 1 && dv == 1) {
            if (w.partner.at(u) == v) {
                // closing this path is only legal as the final cycle
                if (w.pair_long(u, v) && closes_everything(w, u, v)) {
                    used.unmatch(u);
                    used.deg[u] = used.deg[v] = 2;
                    used.done = true;
                    out.push_back(encode(k, used));
                }
            } else {
                int s = w.partner.at(u);
                int t = w.partner.at(v);
                used.unmatch(u);
                used.unmatch(v);
                used.deg[u] = used.deg[v] = 2;
                used.match(s, t, true);
                out.push_back(encode(k, used));
            }
        } else {
            // one endpoint extends the other's path
            int fresh = du == 0 ? u : v;
            int end = du == 0 ? v : u;
            int far = w.partner.at(end);
            used.unmatch(end);
            used.deg[end] = 2;
            used.deg[fresh] = 1;
            used.match(fresh, far, true);
            out.push_back(encode(k, used));
        }
        return WitnessSet::of(std::move(out));
    }

    static bool closes_everything(const HamWitness& w, int u, int v) {
        for (const auto& [label, d] : w.deg)
            if (d == 0 || (d == 1 && label != u && label != v))
                return false;
        return true;
    }

    WitnessSet join(int k, const HamWitness& a, const HamWitness& b) const {
        auto labels = [](const HamWitness& w) {
            std::vector<int> ls;
            for (const auto& [l, d] : w.deg)
                ls.push_back(l);
            return ls;
        };
        if (labels(a) != labels(b))
            return {};
        if (a.done && b.done)
            return {};
        if (a.done || b.done) {
            const HamWitness& closed = a.done ? a : b;
            const HamWitness& open = a.done ? b : a;
            for (const auto& [label, d] : open.deg)
                if (d != 0)
                    return {};  // nothing may attach to the closed cycle
            return WitnessSet::of({encode(k, closed)});
        }

        HamWitness sum;
        for (const auto& [label, d] : a.deg) {
            int total = d + b.deg.at(label);
            if (total > 2)
                return {};
            sum.deg[label] = total;
        }

        // Overlay the two matchings: a multigraph of maximum degree two
        // whose components are the glued paths (or, if a cycle appears,
        // the candidate final cycle).
        struct OverlayEdge {
            int x, y;
            bool is_long;
            bool used = false;
        };
        std::vector<OverlayEdge> edges;
        std::map<int, std::vector<std::size_t>> incident;
        for (const HamWitness* side : {&a, &b}) {
            for (const auto& [x, y] : side->partner) {
                if (x > y)
                    continue;
                incident[x].push_back(edges.size());
                incident[y].push_back(edges.size());
                edges.push_back({x, y, side->pair_long(x, y)});
            }
        }

        auto walk_from = [&](int start) {
            int at = start;
            int count = 0;
            bool any_long = false;
            while (true) {
                const OverlayEdge* step = nullptr;
                for (std::size_t idx : incident[at])
                    if (!edges[idx].used) {
                        edges[idx].used = true;
                        step = &edges[idx];
                        break;
                    }
                if (!step)
                    break;
                ++count;
                any_long = any_long || step->is_long;
                at = step->x == at ? step->y : step->x;
            }
            return std::tuple<int, int, bool>(at, count, any_long);
        };

        // path components start at nodes of overlay degree one
        for (const auto& [node, idxs] : incident) {
            if (idxs.size() != 1)
                continue;
            bool fresh = !edges[idxs.front()].used;
            if (!fresh)
                continue;
            auto [end, count, any_long] = walk_from(node);
            sum.match(node, end, any_long || count >= 2);
        }
        // anything left is a cycle
        int cycles = 0;
        int cycle_count = 0;
        bool cycle_long = false;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].used)
                continue;
            ++cycles;
            auto [end, count, any_long] = walk_from(edges[i].x);
            cycle_count = count;
            cycle_long = any_long;
        }

        if (cycles > 0) {
            // a cycle closed at the join: it must be the one spanning cycle
            if (cycles != 1)
                return {};
            for (const auto& [label, d] : sum.deg)
                if (d != 2)
                    return {};
            if (cycle_count < 3 && !cycle_long)
                return {};  // two parallel paths of one edge each
            HamWitness closed;
            closed.done = true;
            closed.deg = sum.deg;
            return WitnessSet::of({encode(k, closed)});
        }
        return WitnessSet::of({encode(k, sum)});
    }

    std::size_t width(int k) const {
        return 1 + static_cast<std::size_t>(k + 1) * (2 + bit_width_for(k + 1) + 1);
    }

    BitString encode(int k, const HamWitness& w) const {
        BitString out;
        out.push_bit(w.done);
        for (int u = 1; u <= k + 1; ++u) {
            auto it = w.deg.find(u);
            out.append_uint(it == w.deg.end() ? 0 : static_cast<std::uint64_t>(it->second + 1),
                            2);
        }
        for (int u = 1; u <= k + 1; ++u) {
            auto it = w.partner.find(u);
            out.append_uint(it == w.partner.end() ? 0 : static_cast<std::uint64_t>(it->second),
                            bit_width_for(k + 1));
        }
        for (int u = 1; u <= k + 1; ++u) {
            auto it = w.partner.find(u);
            out.push_bit(it != w.partner.end() && w.pair_long(u, it->second));
        }
        return out;
    }

    HamWitness decode(int k, const BitString& bits) const {
        BitReader in(bits);
        HamWitness w;
        w.done = in.read_bit();
        for (int u = 1; u <= k + 1; ++u) {
            auto code = in.read_uint(2);
            if (code != 0)
                w.deg[u] = static_cast<int>(code) - 1;
        }
        for (int u = 1; u <= k + 1; ++u) {
            auto p = in.read_uint(bit_width_for(k + 1));
            if (p != 0)
                w.partner[u] = static_cast<int>(p);
        }
        for (int u = 1; u <= k + 1; ++u) {
            bool is_long = in.read_bit();
            if (is_long && w.partner.count(u))
                w.longs.insert(HamWitness::norm(u, w.partner.at(u)));
        }
        return w;
    }
};

}  // namespace

CorePtr hamiltonian() { return std::make_shared<HamiltonianCore>(); }

}  // namespace widthproof::cores
