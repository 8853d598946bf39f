#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egp/matmod/modular.hpp"

namespace egp {

/// Exponent vector of a monomial.
using Monomial = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over Z in a fixed number of variables.
class Polynomial {
 public:
  explicit Polynomial(int variables = 0) : variables_(variables) {}

  static Polynomial constant(int variables, const mpz_class& c);
  static Polynomial variable(int variables, int index);
  /// sum_i coeffs[i] * x_i.
  static Polynomial linear(const std::vector<std::int64_t>& coeffs);

  int variables() const noexcept { return variables_; }
  const std::map<Monomial, mpz_class>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  mpz_class coefficient(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned e) const;
  /// Coefficients reduced into [0, p) and zero terms dropped.
  Polynomial reduced_mod(std::uint64_t p) const;

  std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& point, const Modulus& field) const;

  /// Human-readable form with variables named by `names` (x0, x1, ... by default).
  std::string to_string(const std::vector<std::string>& names = {}) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, const mpz_class& c);

  int variables_;
  std::map<Monomial, mpz_class> terms_;
};

}  // namespace egp
