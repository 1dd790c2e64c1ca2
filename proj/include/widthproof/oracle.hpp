#ifndef WIDTHPROOF_ORACLE_HPP
#define WIDTHPROOF_ORACLE_HPP

#include "widthproof/graph.hpp"

namespace widthproof::oracle {

/// Exhaustive reference checkers, deliberately naive and sharing no code
/// with the dynamic-programming transitions. All take an input-size guard
/// (vertex count) and throw std::length_error beyond it.
///
/// Conventions (mirrored by the corresponding cores):
///  - the empty graph counts as connected;
///  - Hamiltonian cycles need at least 3 vertices;
///  - vertex/edge "connectivity <= c" means: some deletion set of size <= c
///    leaves a graph with at least two components;
///  - minor branch sets may be empty only for isolated pattern vertices.

constexpr std::size_t kDefaultGuard = 12;

int min_vertex_cover(const Multigraph& g, std::size_t max_vertices = kDefaultGuard);

bool is_simple(const Multigraph& g);

bool max_degree_ge(const Multigraph& g, int d);
bool min_degree_le(const Multigraph& g, int d);

bool colorable(const Multigraph& g, int c, std::size_t max_vertices = kDefaultGuard);

bool is_connected(const Multigraph& g);

bool vertex_connectivity_le(const Multigraph& g, int c,
                            std::size_t max_vertices = kDefaultGuard);
bool edge_connectivity_le(const Multigraph& g, int c,
                          std::size_t max_vertices = kDefaultGuard);

bool is_hamiltonian(const Multigraph& g, std::size_t max_vertices = kDefaultGuard);

bool has_nowhere_zero_flow(const Multigraph& g, int modulus,
                           std::size_t max_vertices = kDefaultGuard);

bool has_minor(const Multigraph& g, const Multigraph& pattern,
               std::size_t max_vertices = kDefaultGuard);

}  // namespace widthproof::oracle

#endif
