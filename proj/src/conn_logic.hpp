#ifndef WIDTHPROOF_SRC_CONN_LOGIC_HPP
#define WIDTHPROOF_SRC_CONN_LOGIC_HPP

#include <optional>
#include <vector>

namespace widthproof::cores::detail {

/// Partition of a subset of the labels 1..k+1 as a label -> cell-id map
/// (index label-1; 0 means absent). Canonical form numbers cells in order
/// of their minimal member.
using Cells = std::vector<int>;

inline void canonicalize(Cells& cells) {
    std::vector<int> rename(cells.size() + 2, 0);
    int next = 0;
    for (int& c : cells) {
        if (c == 0)
            continue;
        if (rename[c] == 0)
            rename[c] = ++next;
        c = rename[c];
    }
}

inline int cell_count(const Cells& cells) {
    int n = 0;
    for (int c : cells)
        n = std::max(n, c);
    return n;
}

inline bool same_support(const Cells& a, const Cells& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a[i] == 0) != (b[i] == 0))
            return false;
    return true;
}

/// Component-tracking state: q as in the connectivity predicate
/// (0 empty, 1 live with active labels, 2 complete and connected, 3 dead or
/// disconnected) plus the partition of the tracked active labels.
struct ConnState {
    int q = 0;
    Cells cells;

    explicit ConnState(int label_count = 0) : cells(label_count, 0) {}

    bool has(int label) const { return cells[label - 1] != 0; }

    void add_singleton(int label) {
        cells[label - 1] = cell_count(cells) + 1;
        if (q == 0)
            q = 1;
        else if (q == 2)
            q = 3;
        canonicalize(cells);
    }

    void forget(int label) {
        int old = cells[label - 1];
        cells[label - 1] = 0;
        bool cell_left = false;
        for (int c : cells)
            if (c == old)
                cell_left = true;
        if (!cell_left && q == 1)
            q = cell_count(cells) == 0 ? 2 : 3;
        canonicalize(cells);
    }

    void merge(int label_a, int label_b) {
        int ca = cells[label_a - 1];
        int cb = cells[label_b - 1];
        if (ca == cb)
            return;
        for (int& c : cells)
            if (c == cb)
                c = ca;
        canonicalize(cells);
    }
};

/// Glues two states tracking the same label set; nullopt when the supports
/// differ (no join is possible).
inline std::optional<ConnState> conn_join(const ConnState& a, const ConnState& b) {
    if (!same_support(a.cells, b.cells))
        return std::nullopt;
    ConnState out(static_cast<int>(a.cells.size()));
    out.cells = a.cells;
    // coarsest common refinement: union cells that share a label in b
    for (std::size_t i = 0; i < b.cells.size(); ++i)
        for (std::size_t j = i + 1; j < b.cells.size(); ++j)
            if (b.cells[i] != 0 && b.cells[i] == b.cells[j] && out.cells[i] != out.cells[j]) {
                int from = out.cells[j];
                int to = out.cells[i];
                for (int& c : out.cells)
                    if (c == from)
                        c = to;
            }
    canonicalize(out.cells);
    if (a.q == 3 || b.q == 3)
        out.q = 3;
    else if (a.q == 0)
        out.q = b.q;
    else if (b.q == 0)
        out.q = a.q;
    else if (a.q == 1 && b.q == 1)
        out.q = 1;
    else if (a.q == 2 && b.q == 2)
        out.q = 3;  // two finished components: permanently disconnected
    else
        return std::nullopt;  // q 1 vs 2 contradicts equal supports
    return out;
}

}  // namespace widthproof::cores::detail

#endif
