#pragma once

#include <optional>
#include <vector>

#include "egp/closedform/formula.hpp"
#include "egp/graphcore/multigraph.hpp"

namespace egp {

struct GenerateOptions {
  /// Vertices acted on after the special vertex; removing them from G - special should leave a
  /// forest. Defaults to a greedy choice by degree, ties broken by index.
  std::optional<std::vector<VertexId>> feedback_vertices;
};

/// Greedy feedback vertex set of g with `special` removed: repeatedly takes a vertex of maximum
/// degree in the 2-core of what remains (ties by smallest index).
std::vector<VertexId> greedy_feedback_vertices(const Multigraph& g, VertexId special);

/// Closed form for the extended graph permanent of g with the given special vertex.
///
/// Every copy of an edge is sent to one of its non-special ends; y_e counts the copies sent to
/// the head. Edges at the special vertex are forced. Edges of g - special inside the forest
/// left by the feedback vertices are solved by peeling leaves, and the remaining edges become
/// bound variables ranging over 0..(edge factor)n. The result has the shape
///   FACT(vn)^(|V|-1) * SUM{...}: product of C(en, y_e) * SGN(...)
/// with identical binomials merged. A component of g - special whose weights cannot balance
/// yields an identically zero formula.
///
/// Preconditions: g connected, loopless, and no vertex with exactly one neighbour.
ClosedForm generate_closed_form(const Multigraph& g, VertexId special, const GenerateOptions& options = {});

}  // namespace egp
