#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/ctwo/ctwo.hpp"
#include "egp/graphcore/catalog.hpp"

using namespace egp;

TEST_CASE("spanning trees") {
  CHECK(spanning_trees(complete_graph(4)).size() == 16);
  CHECK(spanning_trees(complete_graph(3)).size() == 3);
  CHECK(spanning_trees(banana(3)).size() == 3);
}

TEST_CASE("Kirchhoff polynomial equals the modified Laplacian determinant") {
  const KirchhoffContext k4(complete_graph(4));
  const Polynomial psi = k4.polynomial();
  CHECK(psi.degree() == 3);
  CHECK(psi.terms().size() == 16);
  const Modulus f(11);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<std::uint64_t> x(6);
    for (std::size_t i = 0; i < 6; ++i) x[i] = (seed * 7 + i * 3) % 11;
    CHECK(k4.tree_sum(x, f) == k4.laplacian_det(x, f));
    CHECK(psi.evaluate_mod(x, f) == k4.tree_sum(x, f));
  }
  CHECK(KirchhoffContext(complete_graph(3)).polynomial() == Polynomial::linear({1, 1, 1}));
}

TEST_CASE("point counts") {
  for (std::uint64_t p : {2, 3, 5, 7}) CHECK(kirchhoff_point_count(complete_graph(3), p) == p * p);
  for (const char* name : {"K4", "banana", "K4_minus_edge"}) {
    const Multigraph g = catalog_graph(name);
    if (g.vertex_count() < 3) continue;
    for (std::uint64_t p : {2, 3, 5}) {
      CHECK(kirchhoff_point_count(g, p, PsiEvaluator::tree_sum) == kirchhoff_point_count(g, p, PsiEvaluator::laplacian_det));
    }
  }
  CHECK(kirchhoff_point_count(complete_graph(4), 3) == 261);
  CHECK_THROWS_AS(kirchhoff_point_count(banana(2), 3), PreconditionError);
  CHECK_THROWS_AS(kirchhoff_point_count(complete_graph(4), 7, PsiEvaluator::laplacian_det, CountOptions{1000, 1}),
                  BudgetExceeded);
}

TEST_CASE("c2 values") {
  for (const auto& e : c2_sequence(complete_graph(3), 7)) CHECK(e.c2 == 1);
  CHECK(c2_at_prime(complete_graph(4), 3).c2 == 2);
  CHECK(c2_at_prime(complete_graph(4), 5).c2 == 4);
  CHECK(c2_at_prime(wheel(4), 3).c2 == 2);
  CHECK(c2_at_prime(catalog_graph("K3_4"), 2).c2 == 0);
  C2Options small;
  small.count.point_budget = 10'000;
  const C2Entry fallback = c2_at_prime(complete_graph(4), 11, small);
  CHECK(fallback.method == C2Method::dodgson);
  CHECK(fallback.c2 == 10);
  small.dodgson_fallback = false;
  CHECK_THROWS_AS(c2_at_prime(complete_graph(4), 11, small), BudgetExceeded);
  CHECK(c2_to_csv(c2_sequence(complete_graph(3), 3)) == "prime,count,c2\n2,4,1\n3,9,1\n");
}

TEST_CASE("Dodgson polynomials of K4") {
  const Multigraph k4 = complete_graph(4);
  // Edges 0-1, 0-2, 0-3 as a, b, c; d = 1-3 (x4), e = 2-3 (x5), f = 1-2 (x3).
  const Polynomial first = dodgson_tree_polynomial(k4, {0, 2}, {1, 2});
  const Polynomial second = dodgson_tree_polynomial(k4, {0}, {1}, {2});
  CHECK(first == Polynomial::variable(6, 3) + Polynomial::variable(6, 4) + Polynomial::variable(6, 5));
  CHECK(second == Polynomial::variable(6, 4) * Polynomial::variable(6, 5));
  const Polynomial det = dodgson_polynomial(k4, {0, 2}, {1, 2});
  CHECK((det == first || det == Polynomial::constant(6, -1) * first));
  for (std::uint64_t p : {3, 5}) {
    CHECK(dodgson_c2(k4, p, DodgsonTriple{0, 1, 2}) == p - 1);
    CHECK(dodgson_c2(k4, p, DodgsonTriple{3, 4, 5}) == p - 1);
    CHECK(dodgson_c2(wheel(4), p, *default_dodgson_triple(wheel(4))) == p - 1);
  }
}

TEST_CASE("flows and Schwinger solutions") {
  CHECK(count_flows(complete_graph(4), 3).count == 27);
  CHECK(count_flows(path_graph(4), 5).count == 1);
  CHECK(count_flows(banana(2), 5).count == 5);
  const FlowCount big = count_flows(complete_graph(4), 13, CountOptions{1000, 1});
  CHECK_FALSE(big.brute_force);
  CHECK(big.count == 2197);
  const Multigraph k3 = complete_graph(3);
  CHECK(schwinger_solution_count(k3, 3, {0, 0, 0}) == 27);
  // Edges 0->1, 0->2, 1->2: one unit around 0->1->2 and back along 0->2 reversed.
  CHECK(schwinger_solution_count(k3, 3, {1, 2, 1}) == 9);
  CHECK(schwinger_exponent(k3, {1, 2, 1}) == 2);
  CHECK_THROWS_AS(schwinger_solution_count(k3, 3, {1, 1, 2}), PreconditionError);
}
