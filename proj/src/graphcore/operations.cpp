#include "egp/graphcore/operations.hpp"

#include <algorithm>
#include <string>

#include "egp/common/error.hpp"

namespace egp {
namespace {

std::vector<bool> membership(int n, const std::vector<VertexId>& vs, const char* what) {
  std::vector<bool> in(n, false);
  for (VertexId v : vs) {
    if (v < 0 || v >= n) throw PreconditionError(std::string(what) + " contains an invalid vertex");
    in[v] = true;
  }
  return in;
}

}  // namespace

VertexDeletion delete_vertices(const Multigraph& g, const std::vector<VertexId>& doomed) {
  const auto gone = membership(g.vertex_count(), doomed, "deletion set");
  VertexDeletion out;
  out.new_id.assign(g.vertex_count(), -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!gone[v]) out.new_id[v] = next++;
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (gone[ed.tail] || gone[ed.head]) continue;
    edges.push_back({out.new_id[ed.tail], out.new_id[ed.head]});
    out.old_edge.push_back(e);
  }
  out.graph = Multigraph(next, std::move(edges));
  return out;
}

Multigraph decompletion(const Multigraph& completed, VertexId v) {
  if (completed.vertex_count() == 0) throw PreconditionError("empty graph");
  const int d = completed.degree(0);
  if (d < 2 || d % 2 != 0 || !completed.is_regular(d)) {
    throw PreconditionError("decompletion needs a 2k-regular graph");
  }
  if (!completed.is_connected()) throw PreconditionError("decompletion needs a connected graph");
  if (v < 0 || v >= completed.vertex_count()) throw PreconditionError("decompletion vertex out of range");
  return delete_vertices(completed, {v}).graph;
}

std::vector<Multigraph> decompletions(const Multigraph& completed) {
  std::vector<Multigraph> out;
  for (int v = 0; v < completed.vertex_count(); ++v) out.push_back(decompletion(completed, v));
  return out;
}

Multigraph duplicate_edges(const Multigraph& g, int k) {
  if (k < 1) throw PreconditionError("duplication factor must be positive");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()) * static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) edges.insert(edges.end(), g.edges().begin(), g.edges().end());
  return Multigraph(g.vertex_count(), std::move(edges));
}

Multigraph schnetz_twist(const Multigraph& g, const std::array<VertexId, 4>& cut, const std::vector<VertexId>& side) {
  const auto in_side = membership(g.vertex_count(), side, "twist side");
  const auto in_cut = membership(g.vertex_count(), {cut.begin(), cut.end()}, "twist cut");
  for (VertexId c : cut) {
    if (in_side[c]) throw PreconditionError("twist side overlaps the cut");
  }
  if (std::count(in_cut.begin(), in_cut.end(), true) != 4) throw PreconditionError("twist cut needs four distinct vertices");
  auto partner = [&](VertexId v) {
    for (int i = 0; i < 4; ++i) {
      if (cut[i] == v) return cut[i ^ 1];
    }
    return v;
  };
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    const bool ts = in_side[e.tail];
    const bool hs = in_side[e.head];
    if (ts == hs) continue;
    const VertexId other = ts ? e.head : e.tail;
    if (!in_cut[other]) throw PreconditionError("twist side is not separated from the rest by the cut");
    (ts ? e.head : e.tail) = partner(other);
  }
  Multigraph out(g.vertex_count(), std::move(edges));
  if (out.degrees() != g.degrees()) throw PreconditionError("twist does not preserve the degree sequence");
  return out;
}

PlanarDual planar_dual(const Multigraph& g, const Embedding& emb) {
  if (!is_planar_embedding(g, emb)) throw PreconditionError("embedding is not planar (Euler characteristic check failed)");
  const FaceStructure fs = trace_faces(g, emb);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) edges.push_back({fs.face_of_dart[2 * e], fs.face_of_dart[2 * e + 1]});
  PlanarDual out{Multigraph(static_cast<int>(fs.faces.size()), std::move(edges)), {}};
  out.embedding.rotation.resize(fs.faces.size());
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    for (Dart d : fs.faces[f]) out.embedding.rotation[f].push_back(d / 2);
  }
  return out;
}

Multigraph two_vertex_glue(const Multigraph& g1, EdgeId e1, const Multigraph& g2, EdgeId e2, bool flip) {
  if (e1 < 0 || e1 >= g1.edge_count() || e2 < 0 || e2 >= g2.edge_count()) throw PreconditionError("glue edge out of range");
  if (g1.is_loop(e1) || g2.is_loop(e2)) throw PreconditionError("glue edges must not be loops");
  const Edge a = g1.edge(e1);
  const Edge b = g2.edge(e2);
  std::vector<VertexId> map(g2.vertex_count());
  int next = g1.vertex_count();
  for (int v = 0; v < g2.vertex_count(); ++v) {
    if (v == b.tail) {
      map[v] = flip ? a.head : a.tail;
    } else if (v == b.head) {
      map[v] = flip ? a.tail : a.head;
    } else {
      map[v] = next++;
    }
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g1.edge_count(); ++e) {
    if (e != e1) edges.push_back(g1.edge(e));
  }
  for (EdgeId e = 0; e < g2.edge_count(); ++e) {
    if (e != e2) edges.push_back({map[g2.edge(e).tail], map[g2.edge(e).head]});
  }
  return Multigraph(next, std::move(edges));
}

Multigraph whitney_flip(const Multigraph& g, VertexId a, VertexId b, const std::vector<VertexId>& side) {
  const auto in_side = membership(g.vertex_count(), side, "flip side");
  if (a == b || a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count() || in_side[a] || in_side[b]) {
    throw PreconditionError("flip needs two distinct cut vertices outside the side");
  }
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    const bool ts = in_side[e.tail];
    const bool hs = in_side[e.head];
    if (ts == hs) continue;
    VertexId& other = ts ? e.head : e.tail;
    if (other == a) {
      other = b;
    } else if (other == b) {
      other = a;
    } else {
      throw PreconditionError("flip side is not separated by the vertex pair");
    }
  }
  return Multigraph(g.vertex_count(), std::move(edges));
}

FourEdgeCutSplit split_four_edge_cut(const Multigraph& g, const std::vector<VertexId>& side) {
  const auto in_side = membership(g.vertex_count(), side, "cut side");
  std::vector<EdgeId> cut_edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in_side[g.edge(e).tail] != in_side[g.edge(e).head]) cut_edges.push_back(e);
  }
  if (cut_edges.size() != 4) {
    throw PreconditionError("expected a four-edge cut, found " + std::to_string(cut_edges.size()) + " crossing edges");
  }
  auto close_side = [&](bool keep_inside) {
    std::vector<VertexId> doomed;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (in_side[v] != keep_inside) doomed.push_back(v);
    }
    VertexDeletion del = delete_vertices(g, doomed);
    const int z = del.graph.vertex_count();
    std::vector<Edge> edges = del.graph.edges();
    for (EdgeId e : cut_edges) {
      const Edge& ed = g.edge(e);
      const bool tail_kept = in_side[ed.tail] == keep_inside;
      edges.push_back(tail_kept ? Edge{del.new_id[ed.tail], z} : Edge{z, del.new_id[ed.head]});
    }
    return Multigraph(z + 1, std::move(edges));
  };
  return {close_side(true), close_side(false)};
}

void for_each_isomorphism(const Multigraph& g, const Multigraph& h,
                          const std::function<bool(const std::vector<VertexId>&)>& visit, int max_vertices) {
  const int n = g.vertex_count();
  if (n > max_vertices) throw PreconditionError("brute-force isomorphism is limited to small graphs");
  if (n != h.vertex_count() || g.edge_count() != h.edge_count()) return;
  const auto mg = g.multiplicity_matrix();
  const auto mh = h.multiplicity_matrix();
  const auto dg = g.degrees();
  const auto dh = h.degrees();
  {
    auto a = dg;
    auto b = dh;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return;
  }
  // Map vertices in BFS order so each new vertex is constrained by mapped neighbours.
  std::vector<VertexId> order;
  std::vector<bool> queued(n, false);
  for (int s = 0; s < n; ++s) {
    if (queued[s]) continue;
    queued[s] = true;
    order.push_back(s);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
      for (int w = 0; w < n; ++w) {
        if (!queued[w] && mg[order[i]][w] > 0) {
          queued[w] = true;
          order.push_back(w);
        }
      }
    }
  }
  std::vector<VertexId> map(n, -1);
  std::vector<bool> used(n, false);
  bool stop = false;
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (stop) return;
    if (k == order.size()) {
      if (!visit(map)) stop = true;
      return;
    }
    const VertexId u = order[k];
    for (VertexId w = 0; w < n && !stop; ++w) {
      if (used[w] || dg[u] != dh[w] || mg[u][u] != mh[w][w]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = mg[u][order[j]] == mh[w][map[order[j]]];
      if (!ok) continue;
      map[u] = w;
      used[w] = true;
      self(self, k + 1);
      used[w] = false;
      map[u] = -1;
    }
  };
  recurse(recurse, 0);
}

bool are_isomorphic(const Multigraph& g, const Multigraph& h, int max_vertices) {
  bool found = false;
  for_each_isomorphism(g, h, [&](const std::vector<VertexId>&) {
    found = true;
    return false;
  }, max_vertices);
  return found;
}

}  // namespace egp
