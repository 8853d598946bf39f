#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "egp/graphcore/multigraph.hpp"

namespace egp {

/// Rotation system: for every vertex, the counter-clockwise cyclic order of incident
/// edge ids. A loop is listed twice at its vertex; the first occurrence is its tail end.
struct Embedding {
  std::vector<std::vector<EdgeId>> rotation;
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Half-edge 2e leaves edge e's tail; half-edge 2e+1 leaves its head.
using Dart = int;

struct FaceStructure {
  /// Darts of each face in boundary order.
  std::vector<std::vector<Dart>> faces;
  /// Face index on the right of each dart.
  std::vector<int> face_of_dart;
};

/// Checks that every vertex lists exactly its incident edge ends.
void validate_embedding(const Multigraph& g, const Embedding& emb);

FaceStructure trace_faces(const Multigraph& g, const Embedding& emb);

/// Connected and V - E + F = 2.
bool is_planar_embedding(const Multigraph& g, const Embedding& emb);

/// Exhaustive search over rotation systems. Intended for small catalog graphs;
/// throws BudgetExceeded once `max_systems` candidates were tried.
std::optional<Embedding> find_planar_embedding(const Multigraph& g, std::size_t max_systems = 5'000'000);

}  // namespace egp
