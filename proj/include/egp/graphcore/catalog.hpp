#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egp/graphcore/embedding.hpp"
#include "egp/graphcore/multigraph.hpp"

namespace egp {

// Constructed graphs use the canonical orientation tail <= head.

/// Two vertices joined by `multiplicity` parallel edges.
Multigraph banana(int multiplicity = 2);
Multigraph cycle_graph(int k);
Multigraph path_graph(int vertices);
Multigraph star_graph(int leaves);
Multigraph complete_graph(int k);
Multigraph complete_bipartite(int a, int b);
/// Rim 0..w-1 in cyclic order, hub w.
Multigraph wheel(int w);
/// Vertex i joined to i+a and i+b (mod m).
Multigraph circulant(int m, int a, int b);
/// circulant(m, 1, 2) with vertex m-1 removed; zigzag(5) is K4.
Multigraph zigzag(int m);
/// Two copies of K4 glued along an edge.
Multigraph k4_edge_glue();
/// K4 minus one edge: 4 vertices, 5 edges.
Multigraph k4_minus_edge();
/// Two copies of K4 minus an edge glued along an edge: 6 vertices, 8 edges.
Multigraph k4_minus_edge_glue();

/// Resolves names such as "K4", "K3_4", "W4", "wheel(5)", "banana", "zigzag(7)",
/// "circulant(6,1,2)", "C(6,1,2)", "path(4)", "cycle(5)", "star(3)", "P3_1", "P7_11".
/// Throws PreconditionError for unknown names.
Multigraph catalog_graph(std::string_view name);

/// A planar rotation system for a catalog graph, if it has one.
std::optional<Embedding> catalog_embedding(std::string_view name);

/// Names accepted by catalog_graph without parameters.
std::vector<std::string> catalog_names();

}  // namespace egp
