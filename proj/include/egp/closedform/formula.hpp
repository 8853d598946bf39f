#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egp/gperm/gperm.hpp"
#include "egp/matmod/modular.hpp"

namespace egp {

/// coeff_n * n + sum coeffs_x[i] * x_i + constant. `coeffs_x` always has one slot per bound
/// variable of the enclosing formula.
struct LinForm {
  std::int64_t coeff_n = 0;
  std::vector<std::int64_t> coeffs_x;
  std::int64_t constant = 0;

  static LinForm of_n(std::int64_t a, std::size_t variables, std::int64_t c = 0);

  std::int64_t evaluate(std::int64_t n, std::span<const std::int64_t> x) const;
  bool uses_variables() const;
  /// Highest variable index with a nonzero coefficient, or -1.
  int last_variable() const;

  friend bool operator==(const LinForm&, const LinForm&) = default;
};

struct FactorialPower {
  LinForm argument;
  int exponent = 1;
  friend bool operator==(const FactorialPower&, const FactorialPower&) = default;
};

struct BinomialPower {
  LinForm top;
  LinForm bottom;
  int exponent = 1;
  friend bool operator==(const BinomialPower&, const BinomialPower&) = default;
};

/// (-1)^exponent.
struct SignTerm {
  LinForm exponent;
  friend bool operator==(const SignTerm&, const SignTerm&) = default;
};

/// A bound variable ranging over 0..upper(n).
struct BoundVariable {
  std::string name;
  LinForm upper;
  friend bool operator==(const BoundVariable&, const BoundVariable&) = default;
};

/// prefactor * SUM over variables of (product of binomial powers and signs), for p = vn+1.
struct ClosedForm {
  std::int64_t vertex_factor = 1;
  /// Column multiplicity per n; only affects the sign class of a prime.
  std::int64_t edge_factor = 1;
  std::vector<FactorialPower> factorials;
  std::vector<SignTerm> prefactor_signs;
  /// False for a formula without a SUM clause; then `variables`, `binomials` and `signs` are empty.
  bool has_sum = false;
  std::vector<BoundVariable> variables;
  std::vector<BinomialPower> binomials;
  std::vector<SignTerm> signs;

  std::size_t variable_count() const noexcept { return variables.size(); }
  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

/// Parses the formula language; throws ParseError with a 1-based line and column.
///
///   formula   := header ";" prefactor { "*" prefactor } [ "*" sum ]
///   header    := "PRIME" INT "n+1" [ "COLS" INT "n" ]
///   prefactor := "FACT(" linform ")" [ "^" INT ] | "SGN(" linform ")"
///   sum       := "SUM" "{" [ var { "," var } ] "}" ":" factor { "*" factor }
///   var       := IDENT [ "<=" linform ]
///   factor    := "C(" linform "," linform ")" [ "^" INT ] | "SGN(" linform ")"
///   linform   := ["-"] term { ("+"|"-") term } ; term := [ INT "*" ] ( "n" | IDENT ) | INT
///
/// A formula may also start directly with its sum. Variable bounds default to n.
ClosedForm parse_formula(std::string_view text);

/// Canonical text; parse_formula(format_formula(f)) == f.
std::string format_formula(const ClosedForm& f);
std::string format_linform(const LinForm& form, const std::vector<BoundVariable>& variables);

/// Throws PreconditionError when a variable is never referenced or a prefactor or bound uses
/// a bound variable.
void validate_formula(const ClosedForm& f);

struct FormulaEvalOptions {
  /// Threads sharing the outermost summation range.
  unsigned workers = 1;
};

/// Residue of the formula at p = vn+1. Binomials outside 0 <= b <= a vanish.
/// Throws IneligiblePrime for p not prime or not of the right form.
std::uint64_t eval_formula(const ClosedForm& f, std::uint64_t p, const FormulaEvalOptions& options = {});
/// Same, reusing a factorial table for p.
std::uint64_t eval_formula(const ClosedForm& f, const FactorialTable& table, const FormulaEvalOptions& options = {});

/// Sign class of p under the formula's vertex and edge factors.
SignClass formula_sign_class(const ClosedForm& f, std::uint64_t p);

PermSequence formula_sequence(const ClosedForm& f, std::string name, std::uint64_t max_prime,
                              const FormulaEvalOptions& options = {});
PermSequence formula_sequence_at(const ClosedForm& f, std::string name, const std::vector<std::uint64_t>& primes,
                                 const FormulaEvalOptions& options = {});

/// Relabels bound variables: new variable i is old variable order[i].
ClosedForm permute_variables(const ClosedForm& f, const std::vector<int>& order);

}  // namespace egp
