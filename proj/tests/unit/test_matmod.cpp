#include <random>

#include "doctest.h"
#include "egp/common/error.hpp"
#include "egp/matmod/matrix.hpp"
#include "egp/matmod/modular.hpp"
#include "egp/matmod/permanent.hpp"
#include "egp/matmod/polynomial.hpp"

using namespace egp;

TEST_CASE("modular arithmetic") {
  const Modulus m(7);
  CHECK(m.reduce(std::int64_t{-1}) == 6);
  CHECK(m.reduce(mpz_class("-15")) == 6);
  CHECK(m.add(5, 4) == 2);
  CHECK(m.sub(2, 5) == 4);
  CHECK(m.mul(3, 5) == 1);
  CHECK(m.pow(3, 6) == 1);
  CHECK(m.inv(3) == 5);
  CHECK(m.sign(3) == 6);
  CHECK(m.neg(0) == 0);
  CHECK_THROWS_AS(m.inv(0), PreconditionError);
}

TEST_CASE("factorial table and Lucas fallback") {
  const FactorialTable t(7);
  CHECK(t.factorial(6) == 6);
  CHECK(t.factorial(7) == 0);
  CHECK(t.binomial(5, 2) == 3);
  CHECK(t.binomial(10, 3) == 1);
  CHECK(t.binomial(3, 5) == 0);
  CHECK(t.binomial(3, -1) == 0);
}

TEST_CASE("permanent engines agree") {
  CHECK(permanent_naive(IntMatrix{{1, 1}, {1, 1}}) == 2);
  CHECK(permanent_naive(IntMatrix(4, 4, 1)) == 24);
  CHECK(permanent_naive(IntMatrix{{1, 2}, {3, 4}}) == 10);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m(6, 6);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) m(i, j) = entry(rng);
    }
    const auto exact = permanent_naive(m);
    CHECK(permanent_ryser_mod(m, 101) == Modulus(101).reduce(exact));
    CHECK(permanent_naive_mod(m, 13) == Modulus(13).reduce(exact));
  }
}

TEST_CASE("block engine matches Ryser on Kronecker expansions") {
  const IntMatrix base{{1, 1, 0}, {-1, 0, 1}};
  for (std::uint64_t p : {5, 7, 11}) {
    const BlockSpec spec{base, 3, 2};
    const IntMatrix full = kron_ones(base, 3, 2);
    CHECK(full.rows() == 6);
    CHECK(permanent_block(spec, p).residue == permanent_ryser_mod(full, p));
  }
  const BlockPermanent composite = permanent_block(BlockSpec{IntMatrix{{1, 1}, {1, -1}}, 8, 8}, 9);
  CHECK(composite.composite_modulus);
  CHECK(composite.residue == 0);
}

TEST_CASE("determinants") {
  const IntMatrix m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  CHECK(determinant_exact(m) == 18);
  const Modulus f(5);
  CHECK(determinant_mod(reduce(m, f), f) == 3);
}

TEST_CASE("matrix text round trip") {
  const IntMatrix m{{1, -1, 0}, {0, 2, 3}};
  CHECK(parse_matrix(format_matrix(m)) == m);
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial x = Polynomial::variable(2, 0);
  const Polynomial y = Polynomial::variable(2, 1);
  const Polynomial sq = (x + y).pow(2);
  CHECK(sq.degree() == 2);
  CHECK(sq.coefficient(Monomial{1, 1}) == 2);
  CHECK((sq - x * x - y * y) == Polynomial::constant(2, 2) * x * y);
  CHECK(Polynomial::linear({1, -1}) == x - y);
  CHECK(sq.evaluate_mod({1, 2}, Modulus(7)) == 2);
  CHECK(Polynomial::constant(2, 7).reduced_mod(7).is_zero());
}
