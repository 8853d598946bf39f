#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egp/ctwo/ctwo.hpp"
#include "egp/gperm/gperm.hpp"
#include "egp/graphcore/multigraph.hpp"
#include "egp/matmod/polynomial.hpp"

namespace egp {

struct LinearFactor {
  std::vector<std::int64_t> coeffs;
  int exponent = 1;
  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// Product of powers of linear forms in `variables` unknowns, kept factored.
struct LinearFormProduct {
  int variables = 0;
  std::vector<LinearFactor> factors;

  int degree() const;
  Polynomial expand() const;
  /// Variables named x1..xL, e.g. "(x1+x2+x3)^2(-x1+x4+x5)^2".
  std::string to_string(std::string_view name = "x") const;
  friend bool operator==(const LinearFormProduct&, const LinearFormProduct&) = default;
};

/// Permanent polynomial of the fundamental matrix: one factor per row of the reduced incidence
/// matrix, its linear form running over all e copies of each edge, raised to the vertex factor v.
/// Factors with an even exponent are normalised to a positive leading coefficient.
LinearFormProduct permanent_polynomial(const Multigraph& g, std::optional<VertexId> special = {});

/// The v-th root of the permanent polynomial with y_i^v substituted for x_i.
struct TildePolynomial {
  LinearFormProduct roots;  ///< exponent-1 factors in the x variables
  int power = 1;            ///< v
  std::uint64_t evaluate(const std::vector<std::uint64_t>& y, const Modulus& field) const;
  Polynomial expand() const;
};
TildePolynomial tilde_polynomial(const Multigraph& g, std::optional<VertexId> special = {});

/// |{y in F_p^L : F~(y) = 0}|. Requires p = 1 mod v or p = 2, and p^L within budget.
mpz_class tilde_point_count(const Multigraph& g, std::uint64_t p, std::optional<VertexId> special = {},
                            const CountOptions& options = {});

struct PointCountRelation {
  std::uint64_t prime = 0;
  mpz_class count;
  /// r!^L [F~]_p mod p with p = r v + 1.
  std::uint64_t scaled = 0;
  std::uint64_t gperm = 0;
  SignClass sign_class = SignClass::fixed;
  /// gperm = scaled, up to sign at flippable primes.
  bool holds = false;
  /// gperm = (-1)^(L+1) scaled, up to sign at flippable primes. Summing F^(p-1) over
  /// F_p^L contributes (-1)^L per monomial, and [F]_p = -sum F^(p-1).
  bool holds_with_sign = false;
  /// For graphs with |E| = 2(|V|-1): +1 when |E| = 0 mod 4, else -1.
  std::optional<int> phi4_sign;
  /// gperm = phi4_sign * [F~]_p, up to sign at flippable primes.
  bool phi4_holds = false;
  /// gperm = -phi4_sign * [F~]_p, up to sign at flippable primes.
  bool phi4_holds_with_sign = false;
};

/// Checks GPerm at p against r!^L [F~]_p, computing the permanent with the block engine.
PointCountRelation check_point_count_relation(const Multigraph& g, std::uint64_t p, std::optional<VertexId> special = {},
                                              const CountOptions& options = {});

struct ChevalleyCheck {
  std::uint64_t coefficient = 0;  ///< [(x1..xN)^(p-1)] F^(p-1) mod p
  mpz_class count;                ///< [F]_p
  /// coefficient = [F]_p mod p.
  bool agree = false;
  /// (-1)^(N+1) coefficient = [F]_p mod p.
  bool agree_with_sign = false;
};

/// Both sides of the Chevalley-Warning coefficient identity. Requires N <= 4, p <= 7, deg F <= N.
ChevalleyCheck verify_chevalley(const Polynomial& f, std::uint64_t p);

struct ExtensionCheck {
  mpz_class lhs;  ///< [x1..x_rn] h^[r]
  mpz_class rhs;  ///< r!^n [(x1..xn)^r] h
  bool holds = false;
};

/// h given as a product of linear forms without constant term. Requires r n <= 8.
ExtensionCheck verify_extension_identity(const LinearFormProduct& h, int r);

/// Truncated power series c_0 + c_1 q + ... + c_N q^N.
class PowerSeries {
 public:
  explicit PowerSeries(int order = 0) : coeffs_(static_cast<std::size_t>(order) + 1) {}
  static PowerSeries one(int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const mpz_class& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  mpz_class& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  PowerSeries operator-() const;
  /// Multiplies by q^k, dropping terms past the order.
  PowerSeries shifted(int k) const;
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

struct EtaTerm {
  int multiplier = 1;  ///< m in eta(m z)
  int exponent = 1;
};

/// q-expansion of prod eta(m_i z)^e_i to order N. Requires sum m_i e_i = 0 mod 24.
PowerSeries eta_product(const std::vector<EtaTerm>& terms, int order);
/// Parses "eta(4z)^6", "-eta(2z)^4*eta(4z)^4" and similar; returns the sign and terms.
std::pair<int, std::vector<EtaTerm>> parse_eta_product(std::string_view text);

struct ModformCheck {
  std::uint64_t prime = 0;
  mpz_class coefficient;  ///< a_p
  std::uint64_t reduced = 0;
  std::uint64_t residue = 0;
  SignClass sign_class = SignClass::fixed;
  bool pass = false;
};

struct ModformReport {
  std::vector<ModformCheck> checks;
  int epsilon = 1;
  bool match = false;
  std::string reason;
};

/// Compares sequence entries with a_p mod p. Unsigned comparisons let flippable entries absorb one
/// global sign; signed comparisons demand equality at every prime.
ModformReport compare_modform(const PermSequence& seq, const PowerSeries& series, bool signed_match = false);
ModformReport compare_coefficients(const PermSequence& seq, const std::map<std::uint64_t, mpz_class>& coefficients,
                                   bool signed_match = false);

/// CSV with header "p,a_p".
std::map<std::uint64_t, mpz_class> parse_coefficient_csv(std::string_view text);

}  // namespace egp
