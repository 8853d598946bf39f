#include "egp/graphcore/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "egp/common/error.hpp"
#include "egp/graphcore/operations.hpp"

namespace egp {
namespace {

Edge ordered(VertexId a, VertexId b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

void require(bool ok, const char* message) {
  if (!ok) throw PreconditionError(message);
}

/// Parses "name(a,b,...)" into its integer arguments.
std::optional<std::vector<int>> call_arguments(std::string_view text, std::string_view name) {
  if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name || text[name.size()] != '(' ||
      text.back() != ')') {
    return std::nullopt;
  }
  std::string_view inner = text.substr(name.size() + 1, text.size() - name.size() - 2);
  std::vector<int> args;
  while (!inner.empty()) {
    const std::size_t comma = inner.find(',');
    std::string_view part = inner.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) return std::nullopt;
    args.push_back(value);
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  return args;
}

std::optional<int> suffix_number(std::string_view text, std::string_view prefix) {
  if (text.size() <= prefix.size() || text.substr(0, prefix.size()) != prefix) return std::nullopt;
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data() + prefix.size(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

/// Seven-loop census graph P7_11, found among the 4-regular graphs on nine vertices by its
/// residue sequence. It vanishes at p = 3 without a vanishing symmetry.
Multigraph census_p7_11() {
  // Completed graph on 9 vertices, decompleted at vertex 8.
  const std::vector<std::pair<int, int>> completed = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 5}, {1, 6}, {2, 7}, {2, 8},
      {3, 5}, {3, 6}, {3, 7}, {4, 5}, {4, 7}, {4, 8}, {5, 8}, {6, 7}, {6, 8}};
  std::vector<Edge> edges;
  for (auto [a, b] : completed) edges.push_back(ordered(a, b));
  return decompletion(Multigraph(9, std::move(edges)), 8);
}

}  // namespace

Multigraph banana(int multiplicity) {
  require(multiplicity >= 1, "banana needs at least one edge");
  return Multigraph(2, std::vector<Edge>(static_cast<std::size_t>(multiplicity), Edge{0, 1}));
}

Multigraph cycle_graph(int k) {
  require(k >= 2, "cycle needs at least two vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back(ordered(i, (i + 1) % k));
  return Multigraph(k, std::move(edges));
}

Multigraph path_graph(int vertices) {
  require(vertices >= 2, "path needs at least two vertices");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < vertices; ++i) edges.push_back({i, i + 1});
  return Multigraph(vertices, std::move(edges));
}

Multigraph star_graph(int leaves) {
  require(leaves >= 1, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Multigraph(leaves + 1, std::move(edges));
}

Multigraph complete_graph(int k) {
  require(k >= 2, "complete graph needs at least two vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j});
  }
  return Multigraph(k, std::move(edges));
}

Multigraph complete_bipartite(int a, int b) {
  require(a >= 1 && b >= 1, "complete bipartite graph needs non-empty parts");
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
  }
  return Multigraph(a + b, std::move(edges));
}

Multigraph wheel(int w) {
  require(w >= 3, "wheel needs at least three spokes");
  std::vector<Edge> edges;
  for (int i = 0; i < w; ++i) edges.push_back(ordered(i, (i + 1) % w));
  for (int i = 0; i < w; ++i) edges.push_back({i, w});
  return Multigraph(w + 1, std::move(edges));
}

Multigraph circulant(int m, int a, int b) {
  require(m >= 3 && a > 0 && b > 0 && a < m && b < m, "circulant needs 0 < a, b < m");
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    edges.push_back(ordered(i, (i + a) % m));
    edges.push_back(ordered(i, (i + b) % m));
  }
  return Multigraph(m, std::move(edges));
}

Multigraph zigzag(int m) {
  require(m >= 5, "zigzag needs m >= 5");
  return decompletion(circulant(m, 1, 2), m - 1);
}

Multigraph k4_edge_glue() { return two_vertex_glue(complete_graph(4), 0, complete_graph(4), 0, false); }

Multigraph k4_minus_edge() { return Multigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

Multigraph k4_minus_edge_glue() { return two_vertex_glue(k4_minus_edge(), 0, k4_minus_edge(), 0, false); }

Multigraph catalog_graph(std::string_view name) {
  static const std::map<std::string, Multigraph (*)(), std::less<>> fixed = {
      {"banana", [] { return banana(2); }},
      {"K3", [] { return complete_graph(3); }},
      {"K4", [] { return complete_graph(4); }},
      {"K5", [] { return complete_graph(5); }},
      {"K3_4", [] { return complete_bipartite(3, 4); }},
      {"K4_minus_edge", k4_minus_edge},
      {"didntwork_G1", k4_minus_edge},
      {"didntwork_G", k4_minus_edge_glue},
      {"P1_1", [] { return banana(2); }},
      {"P3_1", [] { return complete_graph(4); }},
      {"P3_1sq", k4_edge_glue},
      {"P4_1", [] { return zigzag(6); }},
      {"P5_1", [] { return zigzag(7); }},
      {"P6_1", [] { return zigzag(8); }},
      {"P6_4", [] { return complete_bipartite(3, 4); }},
      {"P7_1", [] { return zigzag(9); }},
      {"P7_11", census_p7_11},
  };
  if (auto it = fixed.find(name); it != fixed.end()) return it->second();
  if (auto k = suffix_number(name, "W")) return wheel(*k);
  if (auto k = suffix_number(name, "K")) return complete_graph(*k);
  if (auto args = call_arguments(name, "wheel"); args && args->size() == 1) return wheel((*args)[0]);
  if (auto args = call_arguments(name, "zigzag"); args && args->size() == 1) return zigzag((*args)[0]);
  if (auto args = call_arguments(name, "path"); args && args->size() == 1) return path_graph((*args)[0]);
  if (auto args = call_arguments(name, "cycle"); args && args->size() == 1) return cycle_graph((*args)[0]);
  if (auto args = call_arguments(name, "star"); args && args->size() == 1) return star_graph((*args)[0]);
  if (auto args = call_arguments(name, "banana"); args && args->size() == 1) return banana((*args)[0]);
  for (std::string_view fn : {"circulant", "C"}) {
    if (auto args = call_arguments(name, fn); args && args->size() == 3) {
      return circulant((*args)[0], (*args)[1], (*args)[2]);
    }
  }
  throw PreconditionError("unknown catalog graph '" + std::string(name) + "'");
}

std::optional<Embedding> catalog_embedding(std::string_view name) {
  return find_planar_embedding(catalog_graph(name));
}

std::vector<std::string> catalog_names() {
  return {"banana", "K3", "K4", "K5", "K3_4", "K4_minus_edge", "didntwork_G1", "didntwork_G", "P1_1", "P3_1",
          "P3_1sq", "P4_1", "P5_1", "P6_1", "P6_4", "P7_1", "P7_11", "W3", "W4", "W5"};
}

}  // namespace egp
