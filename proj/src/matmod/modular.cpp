#include "egp/matmod/modular.hpp"

#include <string>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"

namespace egp {

Modulus::Modulus(std::uint64_t m) : m_(m) {
  if (m < 2 || m >= (1ULL << 63)) throw PreconditionError("modulus must lie in [2, 2^63)");
}

std::uint64_t Modulus::reduce(std::int64_t x) const noexcept {
  const auto m = static_cast<std::int64_t>(m_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Modulus::reduce(const mpz_class& x) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m_);
  return r.get_ui();
}

std::uint64_t Modulus::add(std::uint64_t a, std::uint64_t b) const noexcept {
  const std::uint64_t s = a + b;
  return s >= m_ ? s - m_ : s;
}

std::uint64_t Modulus::sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + m_ - b; }

std::uint64_t Modulus::mul(std::uint64_t a, std::uint64_t b) const noexcept { return mul_mod(a, b, m_); }

std::uint64_t Modulus::pow(std::uint64_t a, std::uint64_t e) const noexcept { return pow_mod(a, e, m_); }

std::uint64_t Modulus::inv(std::uint64_t a) const {
  mpz_class r;
  const mpz_class x(static_cast<unsigned long>(a % m_));
  const mpz_class m(static_cast<unsigned long>(m_));
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw PreconditionError(std::to_string(a) + " is not invertible modulo " + std::to_string(m_));
  }
  return r.get_ui();
}

FactorialTable::FactorialTable(std::uint64_t p) : field_(p) {
  if (!is_prime(p)) throw PreconditionError("factorial tables need a prime modulus");
  if (p > max_prime) throw BudgetExceeded("factorial tables are capped at p <= 10^6");
  fact_.resize(p);
  inv_fact_.resize(p);
  fact_[0] = 1;
  for (std::uint64_t k = 1; k < p; ++k) fact_[k] = field_.mul(fact_[k - 1], k);
  inv_fact_[p - 1] = field_.inv(fact_[p - 1]);
  for (std::uint64_t k = p - 1; k > 0; --k) inv_fact_[k - 1] = field_.mul(inv_fact_[k], k);
}

std::uint64_t FactorialTable::factorial(std::int64_t k) const {
  if (k < 0) throw PreconditionError("factorial of a negative number");
  if (static_cast<std::uint64_t>(k) >= prime()) return 0;
  return fact_[static_cast<std::size_t>(k)];
}

std::uint64_t FactorialTable::inverse_factorial(std::int64_t k) const {
  if (k < 0 || static_cast<std::uint64_t>(k) >= prime()) throw PreconditionError("k! is not invertible mod p");
  return inv_fact_[static_cast<std::size_t>(k)];
}

std::uint64_t FactorialTable::binomial(std::int64_t a, std::int64_t b) const {
  if (b < 0 || a < 0 || b > a) return 0;
  const auto p = static_cast<std::int64_t>(prime());
  std::uint64_t result = 1;
  while (a > 0 || b > 0) {
    const std::int64_t ad = a % p;
    const std::int64_t bd = b % p;
    if (bd > ad) return 0;
    result = field_.mul(result, field_.mul(fact_[ad], field_.mul(inv_fact_[bd], inv_fact_[ad - bd])));
    a /= p;
    b /= p;
  }
  return result;
}

}  // namespace egp
