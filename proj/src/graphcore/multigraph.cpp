#include "egp/graphcore/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"

namespace egp {

Multigraph::Multigraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) throw PreconditionError("negative vertex count");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_) {
      throw PreconditionError("edge " + std::to_string(i) + " has an endpoint outside 0.." +
                              std::to_string(vertex_count_ - 1));
    }
  }
}

bool Multigraph::has_loops() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.tail == e.head; });
}

int Multigraph::degree(VertexId v) const {
  int d = 0;
  for (const Edge& e : edges_) d += (e.tail == v) + (e.head == v);
  return d;
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(vertex_count_), 0);
  for (const Edge& e : edges_) {
    ++d[static_cast<std::size_t>(e.tail)];
    ++d[static_cast<std::size_t>(e.head)];
  }
  return d;
}

bool Multigraph::is_regular(int k) const {
  const auto d = degrees();
  return std::all_of(d.begin(), d.end(), [k](int x) { return x == k; });
}

std::vector<EdgeId> Multigraph::incident_edges(VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId i = 0; i < edge_count(); ++i) {
    if (edges_[static_cast<std::size_t>(i)].tail == v || edges_[static_cast<std::size_t>(i)].head == v) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::vector<int>> Multigraph::multiplicity_matrix() const {
  const auto n = static_cast<std::size_t>(vertex_count_);
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const Edge& e : edges_) {
    const auto t = static_cast<std::size_t>(e.tail);
    const auto h = static_cast<std::size_t>(e.head);
    ++m[t][h];
    if (t != h) ++m[h][t];
  }
  return m;
}

std::vector<int> Multigraph::component_labels() const {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : edges_) {
    const int a = find(e.tail);
    const int b = find(e.head);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> label(static_cast<std::size_t>(vertex_count_), -1);
  std::vector<int> root_label(static_cast<std::size_t>(vertex_count_), -1);
  int next = 0;
  for (int v = 0; v < vertex_count_; ++v) {
    const auto r = static_cast<std::size_t>(find(v));
    if (root_label[r] < 0) root_label[r] = next++;
    label[static_cast<std::size_t>(v)] = root_label[r];
  }
  return label;
}

int Multigraph::component_count() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

Multigraph Multigraph::canonical() const {
  auto edges = edges_;
  for (Edge& e : edges) {
    if (e.tail > e.head) std::swap(e.tail, e.head);
  }
  return Multigraph(vertex_count_, std::move(edges));
}

Multigraph Multigraph::reversed(EdgeId e) const {
  auto edges = edges_;
  Edge& x = edges.at(static_cast<std::size_t>(e));
  std::swap(x.tail, x.head);
  return Multigraph(vertex_count_, std::move(edges));
}

const char* to_string(SignClass c) noexcept { return c == SignClass::fixed ? "fixed" : "flippable"; }

FundamentalSpec FundamentalSpec::from_dimensions(std::int64_t rows, std::int64_t cols) {
  if (rows < 1 || cols < 1) throw PreconditionError("fundamental matrix needs at least one row and one column");
  FundamentalSpec s;
  s.lcm = std::lcm(rows, cols);
  s.vertex_factor = s.lcm / rows;
  s.edge_factor = s.lcm / cols;
  return s;
}

bool FundamentalSpec::eligible(std::uint64_t p) const noexcept {
  if (vertex_factor <= 0 || p < 2 || !is_prime(p)) return false;
  const auto v = static_cast<std::uint64_t>(vertex_factor);
  return (p - 1) % v == 0 && (p - 1) / v >= 1;
}

std::uint64_t FundamentalSpec::n_of(std::uint64_t p) const {
  if (!eligible(p)) {
    throw IneligiblePrime(std::to_string(p) + " is not a prime of the form " + std::to_string(vertex_factor) +
                          "n+1");
  }
  return (p - 1) / static_cast<std::uint64_t>(vertex_factor);
}

SignClass FundamentalSpec::sign_class(std::uint64_t p) const {
  const std::uint64_t n = n_of(p);
  return (n * static_cast<std::uint64_t>(edge_factor)) % 2 == 1 ? SignClass::flippable : SignClass::fixed;
}

std::vector<std::uint64_t> FundamentalSpec::eligible_primes(std::uint64_t max_prime) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_in_range(2, max_prime)) {
    if (eligible(p)) out.push_back(p);
  }
  return out;
}

FundamentalSpec fundamental_spec(const Multigraph& g) {
  if (g.vertex_count() < 2) throw PreconditionError("fundamental matrix needs at least two vertices");
  if (g.edge_count() < 1) throw PreconditionError("fundamental matrix needs at least one edge");
  return FundamentalSpec::from_dimensions(g.vertex_count() - 1, g.edge_count());
}

}  // namespace egp
