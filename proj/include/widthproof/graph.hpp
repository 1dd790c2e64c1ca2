#ifndef WIDTHPROOF_GRAPH_HPP
#define WIDTHPROOF_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace widthproof {

/// Finite multigraph over positive integer ids. Every edge joins two
/// distinct vertices (no self-loops); parallel edges are allowed.
class Multigraph {
public:
    void add_vertex(int v);
    void add_edge(int e, int u, int v);

    bool has_vertex(int v) const { return vertices_.count(v) != 0; }
    bool has_edge(int e) const { return edges_.count(e) != 0; }

    /// Endpoints as an ordered (min, max) pair.
    std::pair<int, int> endpoints(int e) const;

    const std::set<int>& vertices() const { return vertices_; }
    const std::map<int, std::pair<int, int>>& edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    /// |V| + |E|.
    std::size_t size() const { return vertices_.size() + edges_.size(); }

    int max_vertex_id() const;
    int max_edge_id() const;

    int degree(int v) const;
    std::size_t edges_between(int u, int v) const;

    bool operator==(const Multigraph&) const = default;

private:
    std::set<int> vertices_;
    std::map<int, std::pair<int, int>> edges_;
};

/// Graph with an injective map from a subset of [k+1] to its vertices.
struct BoundariedGraph {
    Multigraph graph;
    std::map<int, int> boundary;

    /// Throws std::invalid_argument if the boundary is not injective into
    /// the vertex set.
    void check() const;
};

/// Glues two boundaried graphs along equal boundary domains, identifying
/// the vertices bound to each common label. Ids of the second operand are
/// shifted by the first operand's maximum vertex/edge id.
BoundariedGraph join(const BoundariedGraph& a, const BoundariedGraph& b);

/// Exhaustive isomorphism test (vertex/edge bijections respecting
/// incidence) with degree-sequence pruning. Meant for small graphs only.
bool isomorphic(const Multigraph& g, const Multigraph& h);

/// Canonical byte string: equal iff isomorphic. Brute-force minimal
/// adjacency-multiset encoding over all vertex orderings; guarded by
/// max_vertices.
std::string canonical_form(const Multigraph& g, std::size_t max_vertices = 10);

std::string to_json(const Multigraph& g);
Multigraph graph_from_json(const std::string& text);
std::string to_dot(const Multigraph& g);

}  // namespace widthproof

#endif
