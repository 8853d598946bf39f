#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace egp {

/// Arithmetic in Z/mZ for m < 2^63. Residues are canonical representatives in [0, m).
class Modulus {
 public:
  explicit Modulus(std::uint64_t m);

  std::uint64_t value() const noexcept { return m_; }
  std::uint64_t reduce(std::int64_t x) const noexcept;
  std::uint64_t reduce(const mpz_class& x) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : m_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Throws PreconditionError when a is not a unit.
  std::uint64_t inv(std::uint64_t a) const;
  /// (-1)^e as a residue; e may be negative.
  std::uint64_t sign(std::int64_t e) const noexcept { return (e % 2 == 0) ? 1 % m_ : m_ - 1; }

 private:
  std::uint64_t m_;
};

/// Factorials and inverse factorials modulo a prime p, for arguments below p.
/// Binomials with a top argument >= p fall back to Lucas' theorem.
class FactorialTable {
 public:
  /// Largest modulus accepted by the table.
  static constexpr std::uint64_t max_prime = 1'000'000;

  explicit FactorialTable(std::uint64_t p);

  const Modulus& field() const noexcept { return field_; }
  std::uint64_t prime() const noexcept { return field_.value(); }
  /// k! mod p for any k >= 0 (zero once k >= p).
  std::uint64_t factorial(std::int64_t k) const;
  /// 1 / k! mod p for 0 <= k < p.
  std::uint64_t inverse_factorial(std::int64_t k) const;
  /// C(a, b) mod p, zero unless 0 <= b <= a.
  std::uint64_t binomial(std::int64_t a, std::int64_t b) const;

 private:
  Modulus field_;
  std::vector<std::uint64_t> fact_;
  std::vector<std::uint64_t> inv_fact_;
};

}  // namespace egp
