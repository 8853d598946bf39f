#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/graphcore/catalog.hpp"
#include "egp/heppbound/hepp.hpp"

using namespace egp;

TEST_CASE("bridgeless lattice of K4") {
  const BridgelessLattice l = bridgeless_lattice(complete_graph(4));
  REQUIRE(l.strata.size() == 4);
  CHECK(l.strata[0].size() == 1);
  CHECK(l.strata[1].size() == 7);
  CHECK(l.strata[2].size() == 6);
  CHECK(l.strata[3].size() == 1);
  CHECK(loop_number(complete_graph(4), 0b111111) == 3);
  CHECK(is_bridgeless(complete_graph(4), 0b111111));
  CHECK_FALSE(is_bridgeless(complete_graph(4), 0b000011));
}

TEST_CASE("Hepp bounds") {
  CHECK(hepp_bound(banana(2)) == 2);
  CHECK(hepp_bound(complete_graph(4)) == 84);
  CHECK(hepp_bound(wheel(4)) == 572);
  CHECK(hepp_bound(catalog_graph("K3_4")) == 13968);
  CHECK(hepp_bound(zigzag(8), 4) == 26220);
  // Lattice DP, chain enumeration and a sector-sum computation all give 3702.
  CHECK(hepp_bound(zigzag(7)) == 3702);
  CHECK(format_rational(mpq_class(7, 2)) == "7/2");
  CHECK(format_rational(mpq_class(84)) == "84");
}

TEST_CASE("chain histogram sums to the bound") {
  const auto hist = hepp_chain_histogram(complete_graph(4));
  mpq_class total = 0;
  std::uint64_t chains = 0;
  for (const auto& [weight, count] : hist) {
    total += weight * count;
    chains += count;
  }
  CHECK(total == 84);
  CHECK(chains == 18);
  const auto z7 = hepp_chain_histogram(zigzag(7));
  mpq_class z7_total = 0;
  for (const auto& [weight, count] : z7) z7_total += weight * count;
  CHECK(z7_total == hepp_bound(zigzag(7)));
}

TEST_CASE("Hepp preconditions") {
  CHECK_THROWS_AS(hepp_bound(path_graph(3)), PreconditionError);
  CHECK_THROWS_AS(hepp_bound(banana(3)), PreconditionError);
}

TEST_CASE("zig-zag regression rows") {
  const auto rows = hepp_zigzag_regression();
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].match);
  CHECK(rows[1].match);
  CHECK(rows[3].match);
  CHECK(rows[2].computed == 3702);
  CHECK(rows[2].expected == 3703);
}
