#pragma once

#include <array>
#include <functional>
#include <vector>

#include "egp/graphcore/embedding.hpp"
#include "egp/graphcore/multigraph.hpp"

namespace egp {

/// Result of deleting vertices: surviving vertices are renumbered by compaction,
/// surviving edges keep their relative order.
struct VertexDeletion {
  Multigraph graph;
  std::vector<VertexId> new_id;  ///< per old vertex, -1 if deleted
  std::vector<EdgeId> old_edge;  ///< per new edge, its id in the source graph
};

VertexDeletion delete_vertices(const Multigraph& g, const std::vector<VertexId>& doomed);

/// Requires a connected 2k-regular graph.
Multigraph decompletion(const Multigraph& completed, VertexId v);
std::vector<Multigraph> decompletions(const Multigraph& completed);

/// Every edge replaced by k parallel copies; copy c of edge e gets id e + c|E|.
Multigraph duplicate_edges(const Multigraph& g, int k);

/// Exchanges cut[0] <-> cut[1] and cut[2] <-> cut[3] on all edges joining `side` to the cut.
/// `side` must be a union of components of g minus the cut, and the result must keep the
/// degree sequence.
Multigraph schnetz_twist(const Multigraph& g, const std::array<VertexId, 4>& cut, const std::vector<VertexId>& side);

struct PlanarDual {
  Multigraph graph;
  Embedding embedding;
};

/// One vertex per face; dual edge e runs from the face right of e to the face left of it.
PlanarDual planar_dual(const Multigraph& g, const Embedding& emb);

/// Deletes e1 from g1 and e2 from g2, then identifies tail(e2) with tail(e1) and head(e2) with
/// head(e1) (swapped when `flip`). Vertices of g1 keep their ids; the rest of g2 follows.
Multigraph two_vertex_glue(const Multigraph& g1, EdgeId e1, const Multigraph& g2, EdgeId e2, bool flip);

/// Swaps a and b on every edge between `side` and {a, b}. `side` may touch the rest only via a, b.
Multigraph whitney_flip(const Multigraph& g, VertexId a, VertexId b, const std::vector<VertexId>& side);

struct FourEdgeCutSplit {
  Multigraph inner;  ///< side plus one new vertex closing the four cut edges
  Multigraph outer;  ///< complement plus one new vertex closing the four cut edges
};

/// Requires exactly four edges between `side` and its complement.
FourEdgeCutSplit split_four_edge_cut(const Multigraph& g, const std::vector<VertexId>& side);

/// Undirected isomorphisms g -> h as vertex maps. The callback returns false to stop.
/// Brute-force backtracking; throws PreconditionError above `max_vertices`.
void for_each_isomorphism(const Multigraph& g, const Multigraph& h,
                          const std::function<bool(const std::vector<VertexId>&)>& visit, int max_vertices = 10);

bool are_isomorphic(const Multigraph& g, const Multigraph& h, int max_vertices = 10);

}  // namespace egp
