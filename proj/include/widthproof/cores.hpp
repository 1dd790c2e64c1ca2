#ifndef WIDTHPROOF_CORES_HPP
#define WIDTHPROOF_CORES_HPP

#include <string>

#include "widthproof/dpcore.hpp"
#include "widthproof/graph.hpp"

namespace widthproof::cores {

/// Vertex covers of size at most r. Witness (R, s): R the active labels of
/// a partial cover, s its size. Clean keeps the smallest s per R; the
/// invariant is the smallest s present.
CorePtr vertex_cover(int r);

/// Unbounded variant; not finite. Its invariant is the minimum vertex
/// cover size of the whole graph.
CorePtr min_vertex_cover();

/// Simple graphs (no parallel edges). Witness: the set of active label
/// pairs currently joined by an edge.
CorePtr simple();

/// Some vertex of degree >= d / some vertex of degree <= d. Witness: a
/// found-flag plus per-active-label degree counters saturating at d+1.
CorePtr max_deg_ge(int d);
CorePtr min_deg_le(int d);

/// Proper c-colorings; witness = colors of the active vertices. Trivially
/// accepting single-witness core when c >= k+1.
CorePtr colorable(int c);

/// Connected graphs (the empty graph counts). Witness (q, P): partition of
/// the active labels by component plus a reachability status.
CorePtr conn();

/// Graphs disconnectable by deleting <= c vertices / edges. Note complete
/// graphs are never disconnectable by vertex deletion, so vconn_le never
/// accepts them regardless of their connectivity.
CorePtr vconn_le(int c);
CorePtr econn_le(int c);

/// Hamiltonian graphs; a cycle needs at least 3 vertices. Witness: path
/// degrees of active vertices plus a matching pairing endpoints of the
/// same partial path.
CorePtr hamiltonian();

/// Nowhere-zero flows over the integers mod m. Witness: per-active-label
/// imbalance (incoming minus outgoing flow, mod m).
CorePtr nzflow(int m);

/// Graphs containing `pattern` as a minor. Witness: per pattern vertex the
/// connectivity state of its branch set, per pattern edge a realized bit.
/// `tag` overrides the display name argument (e.g. the source file).
CorePtr minor(Multigraph pattern, std::string tag = "");

/// Resolves a textual core spec: VertexCover(r), MinVertexCover, Simple,
/// MaxDegGe(d), MinDegLe(d), Colorable(c), Conn, VConnLe(c), EConnLe(c),
/// Hamiltonian, NZFlow(m), Minor(@graph.json). Throws std::invalid_argument
/// for unknown names or bad parameters.
CorePtr make_core(const std::string& spec);

/// Test hook: multiplies every imbalance entry of an nzflow witness by
/// `unit` (mod m); acceptance must be invariant under this map.
BitString nzflow_scale(int k, int m, const BitString& witness, int unit);

/// Test hook: canonical encoding of a vertex-cover witness (budget -1 for
/// the unbounded variant), so reference predicates can build expected
/// witness sets without touching the transition logic.
BitString vertex_cover_encode(int k, int budget, std::uint32_t label_mask,
                              std::uint64_t cover_size);

}  // namespace widthproof::cores

#endif
