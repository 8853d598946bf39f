#include "egp/graphcore/embedding.hpp"

#include <algorithm>
#include <string>

#include "egp/common/error.hpp"

namespace egp {
namespace {

/// Darts leaving v in rotation order.
std::vector<std::vector<Dart>> dart_rotation(const Multigraph& g, const Embedding& emb) {
  std::vector<std::vector<Dart>> out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<bool> tail_used(g.edge_count(), false);
    for (EdgeId e : emb.rotation[v]) {
      const Edge& ed = g.edge(e);
      if (ed.tail == v && !tail_used[e]) {
        tail_used[e] = true;
        out[v].push_back(2 * e);
      } else {
        out[v].push_back(2 * e + 1);
      }
    }
  }
  return out;
}

}  // namespace

void validate_embedding(const Multigraph& g, const Embedding& emb) {
  if (static_cast<int>(emb.rotation.size()) != g.vertex_count()) {
    throw PreconditionError("embedding must list a rotation for every vertex");
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> expected;
    for (EdgeId e : g.incident_edges(v)) {
      expected.push_back(e);
      if (g.is_loop(e)) expected.push_back(e);
    }
    std::vector<int> given(emb.rotation[v].begin(), emb.rotation[v].end());
    std::sort(given.begin(), given.end());
    if (given != expected) {
      throw PreconditionError("rotation at vertex " + std::to_string(v) + " does not match its incident edges");
    }
  }
}

FaceStructure trace_faces(const Multigraph& g, const Embedding& emb) {
  validate_embedding(g, emb);
  const auto rot = dart_rotation(g, emb);
  const int darts = 2 * g.edge_count();
  std::vector<int> successor(darts, -1);
  for (const auto& around : rot) {
    for (std::size_t i = 0; i < around.size(); ++i) successor[around[i]] = around[(i + 1) % around.size()];
  }
  FaceStructure fs;
  fs.face_of_dart.assign(darts, -1);
  for (Dart start = 0; start < darts; ++start) {
    if (fs.face_of_dart[start] >= 0) continue;
    const int face = static_cast<int>(fs.faces.size());
    fs.faces.emplace_back();
    Dart d = start;
    do {
      fs.face_of_dart[d] = face;
      fs.faces.back().push_back(d);
      d = successor[d ^ 1];
    } while (d != start);
  }
  return fs;
}

bool is_planar_embedding(const Multigraph& g, const Embedding& emb) {
  if (!g.is_connected()) return false;
  const auto fs = trace_faces(g, emb);
  return g.vertex_count() - g.edge_count() + static_cast<int>(fs.faces.size()) == 2;
}

std::optional<Embedding> find_planar_embedding(const Multigraph& g, std::size_t max_systems) {
  if (!g.is_connected()) return std::nullopt;
  Embedding emb;
  emb.rotation.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (EdgeId e : g.incident_edges(v)) {
      emb.rotation[v].push_back(e);
      if (g.is_loop(e)) emb.rotation[v].push_back(e);
    }
  }
  // The first entry of each rotation stays put; permuting the rest covers every cyclic order.
  std::size_t tried = 0;
  auto recurse = [&](auto&& self, int v) -> bool {
    if (v == g.vertex_count()) {
      if (++tried > max_systems) throw BudgetExceeded("planar embedding search exceeded its budget");
      return is_planar_embedding(g, emb);
    }
    auto& r = emb.rotation[v];
    if (r.size() <= 2) return self(self, v + 1);
    std::sort(r.begin() + 1, r.end());
    do {
      if (self(self, v + 1)) return true;
    } while (std::next_permutation(r.begin() + 1, r.end()));
    return false;
  };
  if (recurse(recurse, 0)) return emb;
  return std::nullopt;
}

}  // namespace egp
