#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/graphcore/catalog.hpp"
#include "egp/graphcore/embedding.hpp"
#include "egp/graphcore/graph_io.hpp"
#include "egp/graphcore/operations.hpp"

using namespace egp;

TEST_CASE("primality and prime ranges") {
  CHECK(is_prime(2));
  CHECK(is_prime(241));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK(primes_in_range(2, 20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(pow_mod(3, 4, 7) == 4);
}

TEST_CASE("multigraph basics") {
  const Multigraph k4 = complete_graph(4);
  CHECK(k4.vertex_count() == 4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.is_regular(3));
  CHECK(k4.loop_number() == 3);
  CHECK(k4.is_connected());
  const Multigraph r = k4.reversed(0);
  CHECK(r.edge(0).tail == k4.edge(0).head);
  CHECK(r.canonical() == k4);
  const Multigraph two(4, {{0, 1}, {2, 3}});
  CHECK(two.component_count() == 2);
  CHECK(two.component_labels() == std::vector<int>{0, 0, 1, 1});
  const Multigraph loop(1, {{0, 0}});
  CHECK(loop.has_loops());
  CHECK(loop.degree(0) == 2);
}

TEST_CASE("fundamental specs and sign classes") {
  const FundamentalSpec k4 = fundamental_spec(complete_graph(4));
  CHECK(k4.lcm == 6);
  CHECK(k4.vertex_factor == 2);
  CHECK(k4.edge_factor == 1);
  CHECK(k4.eligible_primes(13) == std::vector<std::uint64_t>{3, 5, 7, 11, 13});
  CHECK(k4.n_of(5) == 2);
  CHECK(k4.sign_class(5) == SignClass::fixed);
  CHECK(k4.sign_class(7) == SignClass::flippable);
  CHECK_THROWS_AS(k4.n_of(2), IneligiblePrime);

  const FundamentalSpec k3 = fundamental_spec(complete_graph(3));
  CHECK(k3.lcm == 6);
  CHECK(k3.vertex_factor == 3);
  CHECK(k3.edge_factor == 2);
  CHECK(k3.eligible_primes(20) == std::vector<std::uint64_t>{7, 13, 19});
  CHECK(k3.sign_class(7) == SignClass::fixed);
  CHECK_FALSE(k3.eligible(5));
}

TEST_CASE("catalog graphs") {
  CHECK(are_isomorphic(zigzag(5), complete_graph(4)));
  CHECK(are_isomorphic(wheel(3), complete_graph(4)));
  CHECK(are_isomorphic(catalog_graph("P4_1"), wheel(4)));
  const Multigraph k34 = catalog_graph("K3_4");
  CHECK(k34.vertex_count() == 7);
  CHECK(k34.edge_count() == 12);
  CHECK(catalog_graph("W4").edge_count() == 8);
  CHECK(catalog_graph("C(6,1,2)").is_regular(4));
  CHECK(catalog_graph("zigzag(7)").edge_count() == 10);
  const Multigraph p711 = catalog_graph("P7_11");
  CHECK(p711.vertex_count() == 8);
  CHECK(p711.edge_count() == 14);
  CHECK(k4_edge_glue().vertex_count() == 6);
  CHECK(k4_edge_glue().edge_count() == 10);
  CHECK(k4_minus_edge_glue().edge_count() == 8);
  CHECK_THROWS_AS(catalog_graph("no such graph"), PreconditionError);
}

TEST_CASE("decompletion") {
  const Multigraph oct = circulant(6, 1, 2);
  const Multigraph d = decompletion(oct, 0);
  CHECK(d.vertex_count() == 5);
  CHECK(d.edge_count() == 8);
  CHECK(are_isomorphic(d, wheel(4)));
  CHECK(decompletions(oct).size() == 6);
  CHECK_THROWS_AS(decompletion(complete_graph(4), 0), PreconditionError);
}

TEST_CASE("vertex deletion renumbers by compaction") {
  const VertexDeletion del = delete_vertices(complete_graph(4), {1});
  CHECK(del.graph.vertex_count() == 3);
  CHECK(del.graph.edge_count() == 3);
  CHECK(del.new_id == std::vector<VertexId>{0, -1, 1, 2});
}

TEST_CASE("duplicate edges") {
  const Multigraph d = duplicate_edges(complete_graph(3), 2);
  CHECK(d.edge_count() == 6);
  CHECK(d.edge(4) == d.edge(1));
}

TEST_CASE("Schnetz twist maps one census candidate to the other") {
  auto build = [](std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a, b});
    return Multigraph(9, edges);
  };
  const Multigraph g8 = build({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 6},
                               {3, 7}, {3, 8}, {4, 7}, {4, 8}, {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}});
  const Multigraph g10 = build({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}, {2, 6}, {2, 7},
                                {3, 6}, {3, 8}, {4, 5}, {4, 7}, {4, 8}, {5, 7}, {5, 8}, {6, 7}, {6, 8}});
  const Multigraph twisted = schnetz_twist(g8, {1, 7, 2, 8}, {0, 3, 4});
  CHECK(twisted.is_regular(4));
  CHECK(are_isomorphic(twisted, g10));
}

TEST_CASE("planar embeddings and duals") {
  const Multigraph k4 = complete_graph(4);
  const auto emb = find_planar_embedding(k4);
  REQUIRE(emb);
  CHECK(is_planar_embedding(k4, *emb));
  CHECK(trace_faces(k4, *emb).faces.size() == 4);
  const PlanarDual dual = planar_dual(k4, *emb);
  CHECK(are_isomorphic(dual.graph, k4));
  CHECK_FALSE(find_planar_embedding(complete_bipartite(3, 3)));
  const auto w4 = catalog_embedding("W4");
  REQUIRE(w4);
  CHECK(is_planar_embedding(wheel(4), *w4));
}

TEST_CASE("two-vertex glue and four-edge cuts") {
  const Multigraph glued = two_vertex_glue(complete_graph(4), 0, complete_graph(4), 0, false);
  CHECK(glued.vertex_count() == 6);
  CHECK(glued.edge_count() == 10);
  std::vector<Edge> edges;
  for (int block : {0, 4}) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) edges.push_back({block + a, block + b});
    }
  }
  for (int i = 0; i < 4; ++i) edges.push_back({i, 4 + i});
  const Multigraph g(8, edges);
  const FourEdgeCutSplit split = split_four_edge_cut(g, {0, 1, 2, 3});
  CHECK(split.inner.vertex_count() == 5);
  CHECK(split.inner.is_regular(4));
  CHECK(split.outer.is_regular(4));
  CHECK_THROWS_AS(split_four_edge_cut(g, {0, 1}), PreconditionError);
}

TEST_CASE("graph file round trip and errors") {
  const GraphDocument doc = parse_graph("# K3\nV 3\nE 0 1\nE 1 2\nE 2 0\n");
  CHECK(doc.graph.edge_count() == 3);
  CHECK(doc.graph.edge(2) == Edge{2, 0});
  CHECK(parse_graph(format_graph(doc.graph)).graph == doc.graph);
  try {
    parse_graph("V 3\nE 0 7\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
