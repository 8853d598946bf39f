#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/gperm/gperm.hpp"
#include "egp/graphcore/catalog.hpp"

using namespace egp;

namespace {

PermSequence make(std::vector<std::pair<std::uint64_t, std::uint64_t>> values, std::vector<bool> flippable) {
  PermSequence s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.entries.push_back({values[i].first, values[i].second, flippable[i] ? SignClass::flippable : SignClass::fixed});
  }
  return s;
}

}  // namespace

TEST_CASE("reduced incidence") {
  const IntMatrix m = reduced_incidence(complete_graph(3), 2);
  CHECK(m == IntMatrix{{-1, -1, 0}, {1, 0, -1}});
  CHECK(default_special_vertex(complete_graph(5)) == 4);
}

TEST_CASE("K4 residues reproduce the P3_1 row") {
  const PermSequence s = gperm_sequence(MatrixSource::from_graph("K4", complete_graph(4)), 41);
  std::vector<std::uint64_t> residues;
  for (const auto& e : s.entries) residues.push_back(e.residue);
  CHECK(residues == std::vector<std::uint64_t>{0, 1, 0, 0, 3, 13, 0, 0, 16, 0, 33, 23});
  CHECK(s.find(5)->sign_class == SignClass::fixed);
  CHECK(s.find(7)->sign_class == SignClass::flippable);
  CHECK(s.find(4) == nullptr);
}

TEST_CASE("engines agree on small graphs") {
  for (const char* name : {"banana", "K3", "K4", "W4"}) {
    const Multigraph g = catalog_graph(name);
    const MatrixSource src = MatrixSource::from_graph(name, g);
    for (const auto p : src.spec.eligible_primes(13)) {
      EngineOptions block, ryser;
      block.engine = Engine::block;
      ryser.engine = Engine::ryser;
      const auto dim = static_cast<std::int64_t>(src.spec.n_of(p)) * src.spec.lcm;
      const std::uint64_t b = gperm_at_prime(src, p, block).residue;
      if (dim <= 24) CHECK(gperm_at_prime(src, p, ryser).residue == b);
      if (static_cast<std::int64_t>(src.spec.n_of(p)) * src.spec.edge_factor * g.edge_count() <= 14) {
        CHECK(tagging_oracle(g, p) == b);
      }
    }
  }
}

TEST_CASE("banana is (2n)! at every odd prime") {
  const MatrixSource src = MatrixSource::from_graph("banana", banana(2));
  for (const auto p : src.spec.eligible_primes(23)) {
    const FactorialTable t(p);
    const GPermValue v = gperm_at_prime(src, p);
    CHECK((v.residue == t.factorial(static_cast<std::int64_t>(p - 1)) || v.residue == 1));
  }
  CHECK(gperm_at_prime(src, 5).residue == 4);
}

TEST_CASE("ineligible and composite moduli") {
  const MatrixSource k3 = MatrixSource::from_graph("K3", complete_graph(3));
  CHECK_THROWS_AS(gperm_at_prime(k3, 5), IneligiblePrime);
  const MatrixSource k4 = MatrixSource::from_graph("K4", complete_graph(4));
  const GPermValue composite = gperm_at_prime(k4, 9);
  CHECK(composite.composite_modulus);
  CHECK(composite.residue == 0);
  CHECK(parse_engine("ryser") == Engine::ryser);
  CHECK_THROWS_AS(parse_engine("magic"), PreconditionError);
}

TEST_CASE("sequences_match uses one sign for flippable entries") {
  const PermSequence a = make({{3, 1}, {5, 2}, {7, 3}}, {true, false, true});
  CHECK(sequences_match(a, a).match);
  const PermSequence flipped = make({{3, 2}, {5, 2}, {7, 4}}, {true, false, true});
  const MatchReport m = sequences_match(a, flipped);
  CHECK(m.match);
  CHECK(m.epsilon == -1);
  const PermSequence mixed = make({{3, 2}, {5, 2}, {7, 3}}, {true, false, true});
  CHECK_FALSE(sequences_match(a, mixed).match);
  const PermSequence fixed_off = make({{3, 1}, {5, 3}, {7, 3}}, {true, false, true});
  const MatchReport f = sequences_match(a, fixed_off);
  CHECK_FALSE(f.match);
  CHECK(f.mismatched_primes == std::vector<std::uint64_t>{5});
}

TEST_CASE("sequence helpers and serialisation") {
  const PermSequence a = make({{3, 1}, {5, 2}}, {true, false});
  const PermSequence sq = sequence_product(a, a, "sq");
  CHECK(sq.entries[1].residue == 4);
  CHECK(sequence_negated(a, "neg").entries[0].residue == 2);
  CHECK(sequence_restricted(a, {5}).entries.size() == 1);
  CHECK(sequence_to_csv(a) == "prime,residue,sign_class\n3,1,flippable\n5,2,fixed\n");
  CHECK(sequence_to_json(a).find("\"schema\"") != std::string::npos);
}
