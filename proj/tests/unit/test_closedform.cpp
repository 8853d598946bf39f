#include "doctest.h"
#include "egp/closedform/families.hpp"
#include "egp/closedform/formula.hpp"
#include "egp/closedform/generate.hpp"
#include "egp/common/error.hpp"
#include "egp/graphcore/catalog.hpp"

using namespace egp;

TEST_CASE("parse and format round trip") {
  const std::string text = "PRIME 2n+1; FACT(2*n)^5 * SUM{x0, x1}: C(n,x0)^3 * C(n,x1)^2 * C(n,x0+x1) * SGN(x1)";
  const ClosedForm f = parse_formula(text);
  CHECK(f.vertex_factor == 2);
  CHECK(f.variable_count() == 2);
  CHECK(parse_formula(format_formula(f)) == f);
  for (const auto& name : appendix_names()) {
    const ClosedForm g = appendix_catalog(name);
    CHECK(parse_formula(format_formula(g)) == g);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("PRIME 2n+1; FACT(2*n) * SUM{x0}: C(n,x0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 30);
  }
  CHECK_THROWS_AS(parse_formula("PRIME 2n+1; FACT(2*n) * SUM{x0, x1}: C(n,x0)"), Error);
}

TEST_CASE("bundled formulas") {
  CHECK(appendix_names().size() == 19);
  CHECK(appendix_names().front() == "P1_1");
  CHECK(appendix_names().back() == "P7_11");
  CHECK(eval_formula(appendix_catalog("P5_1"), 5) == 1);
  CHECK(eval_formula(appendix_catalog("P6_4"), 5) == 4);
  CHECK_THROWS_AS(eval_formula(appendix_catalog("P5_1"), 9), IneligiblePrime);
  CHECK_THROWS_AS(appendix_catalog("P9_1"), PreconditionError);
}

TEST_CASE("formula families") {
  CHECK(eval_formula(wheel_formula(4), 5) == 3);
  CHECK(eval_formula(wheel_formula(3), 13) == 3);
  CHECK(eval_formula(didntwork_g_formula(), 241) == 201);
  CHECK(eval_formula(didntwork_g1_formula(), 241) == 10);
  for (std::uint64_t p : {3, 7, 11, 19}) CHECK(eval_formula(wheel_formula(5), p) == 0);
  CHECK(family_formula("zigzag(7)") == zigzag_formula(7));
  CHECK(eval_formula(tree_formula(3), 3) == 1);
  const MatchReport m =
      sequences_match(formula_sequence(k34_formula(), "k34", 41), formula_sequence(appendix_catalog("P6_4"), "P6_4", 41));
  CHECK(m.match);
}

TEST_CASE("generated closed forms match the engine") {
  for (const char* name : {"K3", "K4", "W4", "zigzag(7)", "K3_4"}) {
    const Multigraph g = catalog_graph(name);
    const ClosedForm f = generate_closed_form(g, default_special_vertex(g));
    const MatrixSource src = MatrixSource::from_graph(name, g);
    const auto primes = src.spec.eligible_primes(13);
    CHECK(sequences_match(formula_sequence_at(f, name, primes), gperm_sequence_at(src, primes)).match);
  }
  CHECK_THROWS_AS(generate_closed_form(banana(2), 1), PreconditionError);
}

TEST_CASE("variable permutation keeps the value") {
  const ClosedForm f = appendix_catalog("P6_2");
  std::vector<int> order(f.variable_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(order.size() - 1 - i);
  const ClosedForm g = permute_variables(f, order);
  for (std::uint64_t p : {5, 13, 17}) CHECK(eval_formula(f, p) == eval_formula(g, p));
}

TEST_CASE("parallel evaluation is deterministic") {
  const ClosedForm f = appendix_catalog("P7_11");
  CHECK(eval_formula(f, 41, FormulaEvalOptions{4}) == eval_formula(f, 41));
}
