#include "widthproof/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace widthproof::oracle {

namespace {

void guard(const Multigraph& g, std::size_t max_vertices) {
    if (g.vertex_count() > max_vertices)
        throw std::length_error("oracle input exceeds size guard");
}

std::vector<int> vertex_list(const Multigraph& g) {
    return {g.vertices().begin(), g.vertices().end()};
}

std::vector<int> edge_list(const Multigraph& g) {
    std::vector<int> out;
    for (const auto& [e, ends] : g.edges())
        out.push_back(e);
    return out;
}

bool connected_ignoring(const Multigraph& g, const std::set<int>& dead_vertices,
                        const std::set<int>& dead_edges) {
    std::vector<int> alive;
    for (int v : g.vertices())
        if (!dead_vertices.count(v))
            alive.push_back(v);
    if (alive.empty())
        return true;
    std::set<int> seen{alive.front()};
    std::vector<int> frontier{alive.front()};
    while (!frontier.empty()) {
        int v = frontier.back();
        frontier.pop_back();
        for (const auto& [e, ends] : g.edges()) {
            if (dead_edges.count(e))
                continue;
            int other;
            if (ends.first == v)
                other = ends.second;
            else if (ends.second == v)
                other = ends.first;
            else
                continue;
            if (!dead_vertices.count(other) && seen.insert(other).second)
                frontier.push_back(other);
        }
    }
    return seen.size() == alive.size();
}

bool disconnected_ignoring(const Multigraph& g, const std::set<int>& dead_vertices,
                           const std::set<int>& dead_edges) {
    std::size_t alive = 0;
    for (int v : g.vertices())
        if (!dead_vertices.count(v))
            ++alive;
    return alive >= 2 && !connected_ignoring(g, dead_vertices, dead_edges);
}

template <typename Fn>
bool any_subset(const std::vector<int>& items, std::size_t max_size, Fn&& use) {
    std::vector<int> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (use(chosen))
            return true;
        if (chosen.size() == max_size || i == items.size())
            return false;
        for (std::size_t j = i; j < items.size(); ++j) {
            chosen.push_back(items[j]);
            if (rec(j + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(0);
}

}  // namespace

int min_vertex_cover(const Multigraph& g, std::size_t max_vertices) {
    guard(g, max_vertices);
    std::vector<int> vs = vertex_list(g);
    int best = static_cast<int>(vs.size());
    for (std::uint64_t mask = 0; mask < (1ull << vs.size()); ++mask) {
        std::set<int> cover;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (mask & (1ull << i))
                cover.insert(vs[i]);
        bool covers = true;
        for (const auto& [e, ends] : g.edges())
            if (!cover.count(ends.first) && !cover.count(ends.second)) {
                covers = false;
                break;
            }
        if (covers)
            best = std::min<int>(best, static_cast<int>(cover.size()));
    }
    return best;
}

bool is_simple(const Multigraph& g) {
    std::set<std::pair<int, int>> seen;
    for (const auto& [e, ends] : g.edges())
        if (!seen.insert(ends).second)
            return false;
    return true;
}

bool max_degree_ge(const Multigraph& g, int d) {
    for (int v : g.vertices())
        if (g.degree(v) >= d)
            return true;
    return false;
}

bool min_degree_le(const Multigraph& g, int d) {
    for (int v : g.vertices())
        if (g.degree(v) <= d)
            return true;
    return false;
}

bool colorable(const Multigraph& g, int c, std::size_t max_vertices) {
    guard(g, max_vertices);
    if (c < 0)
        throw std::invalid_argument("color count must be non-negative");
    std::vector<int> vs = vertex_list(g);
    std::map<int, int> color;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size())
            return true;
        for (int col = 1; col <= c; ++col) {
            bool ok = true;
            for (const auto& [e, ends] : g.edges()) {
                int other = -1;
                if (ends.first == vs[i])
                    other = ends.second;
                else if (ends.second == vs[i])
                    other = ends.first;
                if (other != -1 && color.count(other) && color.at(other) == col) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            color[vs[i]] = col;
            if (rec(i + 1))
                return true;
            color.erase(vs[i]);
        }
        return false;
    };
    return rec(0);
}

bool is_connected(const Multigraph& g) {
    return connected_ignoring(g, {}, {});
}

bool vertex_connectivity_le(const Multigraph& g, int c, std::size_t max_vertices) {
    guard(g, max_vertices);
    return any_subset(vertex_list(g), static_cast<std::size_t>(std::max(0, c)),
                      [&](const std::vector<int>& chosen) {
                          return disconnected_ignoring(
                              g, std::set<int>(chosen.begin(), chosen.end()), {});
                      });
}

bool edge_connectivity_le(const Multigraph& g, int c, std::size_t max_vertices) {
    guard(g, max_vertices);
    return any_subset(edge_list(g), static_cast<std::size_t>(std::max(0, c)),
                      [&](const std::vector<int>& chosen) {
                          return disconnected_ignoring(
                              g, {}, std::set<int>(chosen.begin(), chosen.end()));
                      });
}

bool is_hamiltonian(const Multigraph& g, std::size_t max_vertices) {
    guard(g, max_vertices);
    std::vector<int> vs = vertex_list(g);
    if (vs.size() < 3)
        return false;
    std::sort(vs.begin(), vs.end());
    // first vertex fixed; permute the rest
    do {
        bool ok = true;
        for (std::size_t i = 0; i < vs.size() && ok; ++i)
            if (g.edges_between(vs[i], vs[(i + 1) % vs.size()]) == 0)
                ok = false;
        if (ok)
            return true;
    } while (std::next_permutation(vs.begin() + 1, vs.end()));
    return false;
}

bool has_nowhere_zero_flow(const Multigraph& g, int modulus, std::size_t max_vertices) {
    guard(g, max_vertices);
    if (modulus < 1)
        throw std::invalid_argument("modulus must be positive");
    std::vector<int> es = edge_list(g);
    if (es.size() > 16)
        throw std::length_error("flow oracle edge guard exceeded");
    // Fix each edge's orientation min -> max and range over values 1..m-1;
    // the reverse orientation with value f equals this one with m - f.
    std::map<int, int> value;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == es.size()) {
            for (int v : g.vertices()) {
                int balance = 0;
                for (const auto& [e, ends] : g.edges()) {
                    if (ends.first == v)
                        balance += value.at(e);
                    else if (ends.second == v)
                        balance -= value.at(e);
                }
                if (((balance % modulus) + modulus) % modulus != 0)
                    return false;
            }
            return true;
        }
        for (int f = 1; f < modulus; ++f) {
            value[es[i]] = f;
            if (rec(i + 1))
                return true;
        }
        value.erase(es[i]);
        return false;
    };
    return rec(0);
}

namespace {

bool edges_matchable(const Multigraph& g, const Multigraph& pattern,
                     const std::map<int, int>& branch_of) {
    // Injective assignment of pattern edges to distinct host edges running
    // between the right branch sets.
    std::vector<int> pes = edge_list(pattern);
    std::set<int> used;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == pes.size())
            return true;
        auto [px, py] = pattern.endpoints(pes[i]);
        for (const auto& [e, ends] : g.edges()) {
            if (used.count(e))
                continue;
            auto bx = branch_of.find(ends.first);
            auto by = branch_of.find(ends.second);
            if (bx == branch_of.end() || by == branch_of.end())
                continue;
            bool forward = bx->second == px && by->second == py;
            bool backward = bx->second == py && by->second == px;
            if (!forward && !backward)
                continue;
            used.insert(e);
            if (rec(i + 1))
                return true;
            used.erase(e);
        }
        return false;
    };
    return rec(0);
}

}  // namespace

bool has_minor(const Multigraph& g, const Multigraph& pattern, std::size_t max_vertices) {
    guard(g, max_vertices);
    std::vector<int> gv = vertex_list(g);
    std::vector<int> pv = vertex_list(pattern);
    if (pv.size() > 6 || gv.size() > max_vertices)
        throw std::length_error("minor oracle pattern guard exceeded");

    // assignment[i] in {-1} + pattern vertex indices
    std::vector<int> assignment(gv.size(), -1);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == gv.size()) {
            std::map<int, int> branch_of;
            for (std::size_t j = 0; j < gv.size(); ++j)
                if (assignment[j] != -1)
                    branch_of[gv[j]] = pv[assignment[j]];
            for (std::size_t p = 0; p < pv.size(); ++p) {
                std::set<int> outside;
                bool empty = true;
                for (std::size_t j = 0; j < gv.size(); ++j) {
                    if (assignment[j] == static_cast<int>(p))
                        empty = false;
                    else
                        outside.insert(gv[j]);
                }
                if (empty) {
                    if (pattern.degree(pv[p]) > 0)
                        return false;  // edges at p would have no endpoint
                    continue;
                }
                // branch set must induce a connected subgraph
                std::set<int> cut;
                for (const auto& [e, ends] : g.edges())
                    if (outside.count(ends.first) || outside.count(ends.second))
                        cut.insert(e);
                if (!connected_ignoring(g, outside, cut))
                    return false;
            }
            return edges_matchable(g, pattern, branch_of);
        }
        for (int choice = -1; choice < static_cast<int>(pv.size()); ++choice) {
            assignment[i] = choice;
            if (rec(i + 1))
                return true;
        }
        assignment[i] = -1;
        return false;
    };
    return rec(0);
}

}  // namespace widthproof::oracle
