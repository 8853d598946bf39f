#pragma once

#include <cstdint>
#include <vector>

namespace egp {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite directed multigraph on vertices 0..V-1. Edge ids are dense and stable.
/// Parallel edges and loops are allowed.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  bool is_loop(EdgeId e) const { return edge(e).tail == edge(e).head; }
  bool has_loops() const noexcept;

  /// Loops contribute 2.
  int degree(VertexId v) const;
  std::vector<int> degrees() const;
  bool is_regular(int k) const;

  /// Edge ids touching v, each listed once (loops included once).
  std::vector<EdgeId> incident_edges(VertexId v) const;
  /// Undirected edge counts between vertex pairs; loops on the diagonal.
  std::vector<std::vector<int>> multiplicity_matrix() const;

  /// Component label per vertex, labels dense from 0 in order of first vertex.
  std::vector<int> component_labels() const;
  int component_count() const;
  bool is_connected() const { return component_count() <= 1; }
  /// First Betti number |E| - |V| + #components.
  int loop_number() const { return edge_count() - vertex_count() + component_count(); }

  /// Same graph with every edge oriented tail <= head.
  Multigraph canonical() const;
  /// Same graph with edge e reversed.
  Multigraph reversed(EdgeId e) const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
};

enum class SignClass { fixed, flippable };

const char* to_string(SignClass c) noexcept;

/// Multiplicities turning the reduced incidence matrix into a square block matrix:
/// rows repeat `vertex_factor` times, columns `edge_factor` times, both giving `lcm`.
struct FundamentalSpec {
  std::int64_t lcm = 0;
  std::int64_t vertex_factor = 0;
  std::int64_t edge_factor = 0;

  /// From a rows x cols reduced matrix.
  static FundamentalSpec from_dimensions(std::int64_t rows, std::int64_t cols);

  /// p prime with p = vertex_factor * n + 1, n >= 1.
  bool eligible(std::uint64_t p) const noexcept;
  /// n for an eligible p; throws IneligiblePrime otherwise.
  std::uint64_t n_of(std::uint64_t p) const;
  /// Flippable iff n * edge_factor is odd: reorienting one edge negates the residue.
  SignClass sign_class(std::uint64_t p) const;
  /// Eligible primes up to and including max_prime.
  std::vector<std::uint64_t> eligible_primes(std::uint64_t max_prime) const;

  friend bool operator==(const FundamentalSpec&, const FundamentalSpec&) = default;
};

/// Requires |V| >= 2 and |E| >= 1.
FundamentalSpec fundamental_spec(const Multigraph& g);

}  // namespace egp
