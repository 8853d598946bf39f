#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/graphcore/catalog.hpp"
#include "egp/pointcount/pointcount.hpp"

using namespace egp;

TEST_CASE("permanent polynomials") {
  const LinearFormProduct k4 = permanent_polynomial(complete_graph(4));
  CHECK(k4.variables == 6);
  CHECK(k4.degree() == 6);
  CHECK(k4.to_string() == "(x1+x2+x3)^2(x1-x4-x5)^2(x2+x4-x6)^2");
  const LinearFormProduct banana2 = permanent_polynomial(banana(2));
  CHECK(banana2.to_string() == "(x1+x2)^2");
  const LinearFormProduct k3 = permanent_polynomial(complete_graph(3));
  CHECK(k3.variables == 6);
  CHECK(k3.factors.size() == 2);
  CHECK(k3.factors[0].exponent == 3);
  CHECK(k3.expand().degree() == 6);
  CHECK_THROWS_AS(permanent_polynomial(Multigraph(3, {{0, 1}})), PreconditionError);
}

TEST_CASE("tilde polynomial") {
  const TildePolynomial t = tilde_polynomial(complete_graph(4));
  CHECK(t.power == 2);
  CHECK(t.expand().degree() == 6);
  const Modulus f(5);
  const std::vector<std::uint64_t> y{1, 2, 0, 3, 4, 1};
  CHECK(t.evaluate(y, f) == t.expand().evaluate_mod(y, f));
}

TEST_CASE("point counts against permanent residues") {
  for (std::uint64_t p : {3, 5, 7}) {
    const PointCountRelation r = check_point_count_relation(banana(2), p);
    CHECK(r.holds_with_sign);
    CHECK(r.phi4_holds_with_sign);
  }
  CHECK(check_point_count_relation(banana(3), 7).holds);
  const PointCountRelation k3 = check_point_count_relation(complete_graph(3), 7);
  CHECK(k3.count == 49561);
  CHECK(k3.gperm == 6);
  CHECK(k3.scaled == 1);
  CHECK_FALSE(k3.holds);
  CHECK(k3.holds_with_sign);
  const PointCountRelation k4 = check_point_count_relation(complete_graph(4), 5);
  CHECK(k4.count == 7361);
  CHECK(k4.gperm == 1);
  CHECK(k4.phi4_sign == -1);
  CHECK_FALSE(k4.phi4_holds);
  CHECK(k4.phi4_holds_with_sign);
  CHECK(check_point_count_relation(complete_graph(4), 3).holds);
  CHECK(tilde_point_count(complete_graph(4), 2, std::nullopt) == 56);
  CHECK_THROWS_AS(tilde_point_count(complete_graph(3), 5, std::nullopt), IneligiblePrime);
  CHECK_THROWS_AS(tilde_point_count(complete_graph(4), 13, std::nullopt, CountOptions{1000, 1}), BudgetExceeded);
}

TEST_CASE("Chevalley-Warning coefficient identity") {
  const Polynomial x = Polynomial::variable(2, 0);
  const Polynomial y = Polynomial::variable(2, 1);
  const ChevalleyCheck lin = verify_chevalley(x + y, 3);
  CHECK(lin.coefficient == 0);
  CHECK(lin.count == 3);
  CHECK(lin.agree);
  const ChevalleyCheck prod = verify_chevalley(x * y, 3);
  CHECK(prod.coefficient == 1);
  CHECK(prod.count == 5);
  CHECK(prod.agree_with_sign);
  const Polynomial z = Polynomial::variable(3, 2);
  const ChevalleyCheck cubic = verify_chevalley(Polynomial::variable(3, 0) * Polynomial::variable(3, 1) * z, 5);
  CHECK(cubic.agree);
  CHECK_THROWS_AS(verify_chevalley(x * x * y, 3), PreconditionError);
}

TEST_CASE("extension identity") {
  const ExtensionCheck sq = verify_extension_identity(LinearFormProduct{2, {{{1, 1}, 2}}}, 1);
  CHECK(sq.lhs == 2);
  CHECK(sq.holds);
  const ExtensionCheck four = verify_extension_identity(LinearFormProduct{2, {{{1, 1}, 4}}}, 2);
  CHECK(four.lhs == 24);
  CHECK(four.rhs == 24);
  const ExtensionCheck odd = verify_extension_identity(LinearFormProduct{2, {{{1, 1}, 3}}}, 2);
  CHECK(odd.lhs == 0);
  CHECK(odd.rhs == 0);
}

TEST_CASE("eta products") {
  const PowerSeries s = eta_product({{4, 6}}, 10);
  CHECK(s[0] == 0);
  CHECK(s[1] == 1);
  CHECK(s[5] == -6);
  CHECK(s[9] == 9);
  const PowerSeries d = eta_product({{2, 12}}, 10);
  CHECK(d[1] == 1);
  CHECK(d[3] == -12);
  CHECK(eta_product({{1, 24}}, 3)[2] == -24);
  CHECK_THROWS_AS(eta_product({{1, 1}}, 5), PreconditionError);
  const auto [sign, terms] = parse_eta_product("-eta(2z)^4*eta(4z)^4");
  CHECK(sign == -1);
  REQUIRE(terms.size() == 2);
  CHECK(terms[1].multiplier == 4);
  CHECK(terms[1].exponent == 4);
  CHECK_THROWS_AS(parse_eta_product("eta(2z"), ParseError);
}

TEST_CASE("modular form comparisons") {
  const PermSequence k4 = gperm_sequence(MatrixSource::from_graph("K4", complete_graph(4)), 41);
  PowerSeries f = -eta_product({{4, 6}}, 41);
  CHECK(compare_modform(k4, f, false).match);
  CHECK_FALSE(compare_modform(k4, eta_product({{2, 12}}, 41), false).match);
  CHECK_THROWS_AS(compare_modform(k4, eta_product({{4, 6}}, 20), false), PreconditionError);
  const auto csv = parse_coefficient_csv("p,a_p\n3,0\n5,6\n7,0\n");
  CHECK(csv.at(5) == 6);
  CHECK_THROWS_AS(parse_coefficient_csv("prime,value\n"), ParseError);
}
