#include "egp/closedform/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/common/parallel.hpp"

namespace egp {

LinForm LinForm::of_n(std::int64_t a, std::size_t variables, std::int64_t c) {
  return LinForm{a, std::vector<std::int64_t>(variables, 0), c};
}

std::int64_t LinForm::evaluate(std::int64_t n, std::span<const std::int64_t> x) const {
  std::int64_t total = coeff_n * n + constant;
  for (std::size_t i = 0; i < coeffs_x.size(); ++i) {
    if (coeffs_x[i] != 0) total += coeffs_x[i] * x[i];
  }
  return total;
}

bool LinForm::uses_variables() const { return last_variable() >= 0; }

int LinForm::last_variable() const {
  for (int i = static_cast<int>(coeffs_x.size()) - 1; i >= 0; --i) {
    if (coeffs_x[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

namespace {

enum class Tok { integer, ident, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += k;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    std::size_t len = 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
      t.kind = Tok::integer;
      t.text = std::string(text.substr(i, len));
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (ec != std::errc() || t.value > (std::int64_t{1} << 40)) throw ParseError("integer out of range", line, column);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_')) {
        ++len;
      }
      t.kind = Tok::ident;
      t.text = std::string(text.substr(i, len));
    } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
      len = 2;
      t.kind = Tok::symbol;
      t.text = "<=";
    } else if (std::string_view(";*(),{}:^+-").find(c) != std::string_view::npos) {
      t.kind = Tok::symbol;
      t.text = std::string(1, c);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

bool reserved(const std::string& name) {
  return name == "n" || name == "C" || name == "SGN" || name == "FACT" || name == "SUM" || name == "PRIME" ||
         name == "COLS";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  ClosedForm parse() {
    ClosedForm f;
    expect_word("PRIME");
    f.vertex_factor = positive_integer();
    expect_word("n");
    expect("+");
    if (peek().kind != Tok::integer || peek().value != 1) fail("expected '1' in 'n+1'");
    take();
    if (is_word("COLS")) {
      take();
      f.edge_factor = positive_integer();
      expect_word("n");
    }
    expect(";");
    bool any = false;
    for (;;) {
      if (is_word("FACT")) {
        take();
        expect("(");
        FactorialPower fp{linform(), 1};
        expect(")");
        fp.exponent = exponent();
        f.factorials.push_back(std::move(fp));
      } else if (is_word("SGN")) {
        take();
        expect("(");
        f.prefactor_signs.push_back({linform()});
        expect(")");
      } else if (is_word("SUM")) {
        take();
        sum(f);
        any = true;
        break;
      } else {
        fail("expected FACT, SGN or SUM");
      }
      any = true;
      if (peek().kind == Tok::end) break;
      expect("*");
    }
    if (!any) fail("empty formula");
    if (peek().kind != Tok::end) fail("unexpected trailing input '" + peek().text + "'");
    const std::size_t m = f.variables.size();
    for (auto& fp : f.factorials) fp.argument.coeffs_x.resize(m, 0);
    for (auto& s : f.prefactor_signs) s.exponent.coeffs_x.resize(m, 0);
    for (auto& v : f.variables) v.upper.coeffs_x.resize(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const bool used = std::any_of(f.binomials.begin(), f.binomials.end(),
                                    [i](const BinomialPower& b) { return b.top.coeffs_x[i] || b.bottom.coeffs_x[i]; }) ||
                        std::any_of(f.signs.begin(), f.signs.end(),
                                    [i](const SignTerm& s) { return s.exponent.coeffs_x[i] != 0; });
      if (!used) fail_at(sum_token_, "bound variable '" + f.variables[i].name + "' is never used");
    }
    return f;
  }

 private:
  void sum(ClosedForm& f) {
    sum_token_ = peek();
    f.has_sum = true;
    expect("{");
    if (!is_symbol("}")) {
      for (;;) {
        const Token& t = peek();
        if (t.kind != Tok::ident || reserved(t.text)) fail("expected a variable name");
        if (variables_.count(t.text)) fail("variable '" + t.text + "' declared twice");
        BoundVariable v{t.text, LinForm::of_n(1, 0)};
        take();
        if (is_symbol("<=")) {
          take();
          v.upper = linform();
        }
        variables_.emplace(v.name, static_cast<int>(f.variables.size()));
        f.variables.push_back(std::move(v));
        if (!is_symbol(",")) break;
        take();
      }
    }
    expect("}");
    locked_ = true;
    expect(":");
    for (;;) {
      if (is_word("C")) {
        take();
        expect("(");
        BinomialPower b;
        b.top = linform();
        expect(",");
        b.bottom = linform();
        expect(")");
        b.exponent = exponent();
        f.binomials.push_back(std::move(b));
      } else if (is_word("SGN")) {
        take();
        expect("(");
        f.signs.push_back({linform()});
        expect(")");
      } else {
        fail("expected C or SGN");
      }
      if (!is_symbol("*")) break;
      take();
    }
  }

  LinForm linform() {
    LinForm out = LinForm::of_n(0, locked_ ? variables_.size() : 0);
    std::int64_t sign = 1;
    if (is_symbol("-")) {
      take();
      sign = -1;
    }
    for (;;) {
      term(out, sign);
      if (is_symbol("+")) {
        sign = 1;
      } else if (is_symbol("-")) {
        sign = -1;
      } else {
        break;
      }
      take();
    }
    return out;
  }

  void term(LinForm& out, std::int64_t sign) {
    std::int64_t coeff = 1;
    bool numeric = false;
    if (peek().kind == Tok::integer) {
      coeff = take().value;
      numeric = true;
      if (is_symbol("*")) {
        // "2*n" is a term, but "2 * C(...)" ends the linform; look past the star.
        if (tokens_[pos_ + 1].kind != Tok::ident || tokens_[pos_ + 1].text == "C" || tokens_[pos_ + 1].text == "SGN") {
          out.constant += sign * coeff;
          return;
        }
        take();
      } else if (peek().kind != Tok::ident) {
        out.constant += sign * coeff;
        return;
      }
    }
    const Token& t = peek();
    if (t.kind != Tok::ident) fail(numeric ? "expected 'n' or a variable" : "expected a term");
    if (t.text == "n") {
      out.coeff_n += sign * coeff;
    } else {
      auto it = variables_.find(t.text);
      if (it == variables_.end() || !locked_) fail("unbound variable '" + t.text + "'");
      out.coeffs_x[static_cast<std::size_t>(it->second)] += sign * coeff;
    }
    take();
  }

  int exponent() {
    if (!is_symbol("^")) return 1;
    take();
    return static_cast<int>(positive_integer());
  }

  std::int64_t positive_integer() {
    if (peek().kind != Tok::integer || peek().value < 1) fail("expected a positive integer");
    return take().value;
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool is_symbol(std::string_view s) const { return peek().kind == Tok::symbol && peek().text == s; }
  bool is_word(std::string_view s) const { return peek().kind == Tok::ident && peek().text == s; }
  void expect(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "'");
    take();
  }
  void expect_word(std::string_view s) {
    if (!is_word(s)) fail("expected '" + std::string(s) + "'");
    take();
  }
  [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, int> variables_;
  bool locked_ = false;
  Token sum_token_;
};

void append_term(std::ostringstream& out, bool& first, std::int64_t coeff, const std::string& name) {
  if (coeff == 0) return;
  const std::int64_t mag = coeff < 0 ? -coeff : coeff;
  if (coeff < 0) {
    out << '-';
  } else if (!first) {
    out << '+';
  }
  first = false;
  if (name.empty()) {
    out << mag;
  } else {
    if (mag != 1) out << mag << '*';
    out << name;
  }
}

}  // namespace

ClosedForm parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string format_linform(const LinForm& form, const std::vector<BoundVariable>& variables) {
  std::ostringstream out;
  bool first = true;
  append_term(out, first, form.coeff_n, "n");
  for (std::size_t i = 0; i < form.coeffs_x.size(); ++i) {
    append_term(out, first, form.coeffs_x[i], i < variables.size() ? variables[i].name : "x" + std::to_string(i));
  }
  append_term(out, first, form.constant, "");
  return first ? "0" : out.str();
}

std::string format_formula(const ClosedForm& f) {
  std::ostringstream out;
  out << "PRIME " << f.vertex_factor << "n+1";
  if (f.edge_factor != 1) out << " COLS " << f.edge_factor << 'n';
  out << "; ";
  const auto& vars = f.variables;
  std::vector<std::string> items;
  for (const auto& fp : f.factorials) {
    std::string s = "FACT(" + format_linform(fp.argument, vars) + ")";
    if (fp.exponent != 1) s += "^" + std::to_string(fp.exponent);
    items.push_back(std::move(s));
  }
  for (const auto& s : f.prefactor_signs) items.push_back("SGN(" + format_linform(s.exponent, vars) + ")");
  if (f.has_sum) {
    std::string s = "SUM{";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i > 0) s += ", ";
      s += vars[i].name;
      if (vars[i].upper != LinForm::of_n(1, vars.size())) s += "<=" + format_linform(vars[i].upper, vars);
    }
    s += "}: ";
    std::vector<std::string> factors;
    for (const auto& b : f.binomials) {
      std::string c = "C(" + format_linform(b.top, vars) + "," + format_linform(b.bottom, vars) + ")";
      if (b.exponent != 1) c += "^" + std::to_string(b.exponent);
      factors.push_back(std::move(c));
    }
    for (const auto& sg : f.signs) factors.push_back("SGN(" + format_linform(sg.exponent, vars) + ")");
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i > 0 ? " * " : "") + factors[i];
    items.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < items.size(); ++i) out << (i > 0 ? " * " : "") << items[i];
  return out.str();
}

void validate_formula(const ClosedForm& f) {
  if (f.vertex_factor < 1 || f.edge_factor < 1) throw PreconditionError("formula factors must be positive");
  const std::size_t m = f.variables.size();
  auto sized = [m](const LinForm& l) { return l.coeffs_x.size() == m; };
  for (const auto& fp : f.factorials) {
    if (!sized(fp.argument) || fp.argument.uses_variables()) {
      throw PreconditionError("factorial prefactors may only depend on n");
    }
    if (fp.exponent < 1) throw PreconditionError("exponents must be positive");
  }
  for (const auto& s : f.prefactor_signs) {
    if (!sized(s.exponent) || s.exponent.uses_variables()) throw PreconditionError("prefactor signs may only depend on n");
  }
  for (const auto& v : f.variables) {
    if (!sized(v.upper) || v.upper.uses_variables()) throw PreconditionError("variable bounds may only depend on n");
  }
  std::vector<bool> used(m, false);
  for (const auto& b : f.binomials) {
    if (!sized(b.top) || !sized(b.bottom)) throw PreconditionError("binomial has the wrong variable count");
    if (b.exponent < 1) throw PreconditionError("exponents must be positive");
    for (std::size_t i = 0; i < m; ++i) used[i] = used[i] || b.top.coeffs_x[i] || b.bottom.coeffs_x[i];
  }
  for (const auto& s : f.signs) {
    if (!sized(s.exponent)) throw PreconditionError("sign has the wrong variable count");
    for (std::size_t i = 0; i < m; ++i) used[i] = used[i] || s.exponent.coeffs_x[i];
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!used[i]) throw PreconditionError("bound variable '" + f.variables[i].name + "' is never used");
  }
  if (!f.has_sum && (m > 0 || !f.binomials.empty() || !f.signs.empty())) {
    throw PreconditionError("summand factors need a SUM clause");
  }
}

namespace {

FundamentalSpec formula_spec(const ClosedForm& f) {
  return FundamentalSpec{f.vertex_factor * f.edge_factor, f.vertex_factor, f.edge_factor};
}

/// Nested summation with factors evaluated as soon as their last variable is bound.
class SumEvaluator {
 public:
  SumEvaluator(const ClosedForm& f, const FactorialTable& table, std::int64_t n)
      : f_(f), table_(table), field_(table.field()), n_(n), levels_(f.variables.size() + 1) {
    for (std::size_t i = 0; i < f.binomials.size(); ++i) {
      levels_[static_cast<std::size_t>(f.binomials[i].top.last_variable() > f.binomials[i].bottom.last_variable()
                                           ? f.binomials[i].top.last_variable()
                                           : f.binomials[i].bottom.last_variable()) +
              1]
          .binomials.push_back(i);
    }
    for (std::size_t i = 0; i < f.signs.size(); ++i) {
      levels_[static_cast<std::size_t>(f.signs[i].exponent.last_variable() + 1)].signs.push_back(i);
    }
    for (const auto& v : f.variables) upper_.push_back(v.upper.evaluate(n, {}));
  }

  std::size_t outer_count() const {
    return upper_.empty() || upper_[0] < 0 ? 0 : static_cast<std::size_t>(upper_[0] + 1);
  }

  /// Contribution of factors with no bound variable.
  std::uint64_t constant_part() const {
    std::vector<std::int64_t> x(f_.variables.size(), 0);
    return level_value(0, x);
  }

  /// Sum over all assignments with x_0 fixed.
  std::uint64_t with_outer(std::int64_t x0) const {
    std::vector<std::int64_t> x(f_.variables.size(), 0);
    x[0] = x0;
    const std::uint64_t here = level_value(1, x);
    if (here == 0) return 0;
    return field_.mul(here, descend(1, x));
  }

 private:
  struct Level {
    std::vector<std::size_t> binomials;
    std::vector<std::size_t> signs;
  };

  std::uint64_t level_value(std::size_t level, std::span<const std::int64_t> x) const {
    std::uint64_t value = 1;
    for (std::size_t i : levels_[level].binomials) {
      const BinomialPower& b = f_.binomials[i];
      const std::uint64_t c = table_.binomial(b.top.evaluate(n_, x), b.bottom.evaluate(n_, x));
      if (c == 0) return 0;
      value = field_.mul(value, b.exponent == 1 ? c : field_.pow(c, static_cast<std::uint64_t>(b.exponent)));
    }
    std::int64_t parity = 0;
    for (std::size_t i : levels_[level].signs) parity += f_.signs[i].exponent.evaluate(n_, x) & 1;
    return parity % 2 == 0 ? value : field_.neg(value);
  }

  std::uint64_t descend(std::size_t depth, std::vector<std::int64_t>& x) const {
    if (depth == x.size()) return 1;
    std::uint64_t total = 0;
    for (std::int64_t v = 0; v <= upper_[depth]; ++v) {
      x[depth] = v;
      const std::uint64_t here = level_value(depth + 1, x);
      if (here != 0) total = field_.add(total, field_.mul(here, descend(depth + 1, x)));
    }
    x[depth] = 0;
    return total;
  }

  const ClosedForm& f_;
  const FactorialTable& table_;
  const Modulus& field_;
  std::int64_t n_;
  std::vector<Level> levels_;
  std::vector<std::int64_t> upper_;
};

}  // namespace

SignClass formula_sign_class(const ClosedForm& f, std::uint64_t p) { return formula_spec(f).sign_class(p); }

std::uint64_t eval_formula(const ClosedForm& f, std::uint64_t p, const FormulaEvalOptions& options) {
  validate_formula(f);
  formula_spec(f).n_of(p);
  return eval_formula(f, FactorialTable(p), options);
}

std::uint64_t eval_formula(const ClosedForm& f, const FactorialTable& table, const FormulaEvalOptions& options) {
  validate_formula(f);
  const std::uint64_t p = table.prime();
  const auto n = static_cast<std::int64_t>(formula_spec(f).n_of(p));
  const Modulus& field = table.field();

  std::uint64_t prefactor = 1 % p;
  for (const auto& fp : f.factorials) {
    const std::int64_t a = fp.argument.evaluate(n, {});
    if (a < 0) throw PreconditionError("factorial of a negative argument");
    prefactor = field.mul(prefactor, field.pow(table.factorial(a), static_cast<std::uint64_t>(fp.exponent)));
  }
  for (const auto& s : f.prefactor_signs) prefactor = field.mul(prefactor, field.sign(s.exponent.evaluate(n, {})));
  if (prefactor == 0 || !f.has_sum) return prefactor;

  const SumEvaluator eval(f, table, n);
  const std::uint64_t constant = eval.constant_part();
  if (constant == 0) return 0;
  std::uint64_t sum = 0;
  if (f.variables.empty()) {
    sum = 1;
  } else {
    std::vector<std::uint64_t> partial(eval.outer_count(), 0);
    parallel_for(partial.size(), options.workers,
                 [&](std::size_t i) { partial[i] = eval.with_outer(static_cast<std::int64_t>(i)); });
    for (std::uint64_t v : partial) sum = field.add(sum, v);
  }
  return field.mul(prefactor, field.mul(constant, sum));
}

PermSequence formula_sequence_at(const ClosedForm& f, std::string name, const std::vector<std::uint64_t>& primes,
                                 const FormulaEvalOptions& options) {
  PermSequence seq{std::move(name), {}};
  for (std::uint64_t p : primes) {
    seq.entries.push_back({p, eval_formula(f, p, options), formula_sign_class(f, p)});
  }
  return seq;
}

PermSequence formula_sequence(const ClosedForm& f, std::string name, std::uint64_t max_prime,
                              const FormulaEvalOptions& options) {
  return formula_sequence_at(f, std::move(name), formula_spec(f).eligible_primes(max_prime), options);
}

ClosedForm permute_variables(const ClosedForm& f, const std::vector<int>& order) {
  const std::size_t m = f.variables.size();
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < m; ++i) {
    if (sorted.size() != m || sorted[i] != static_cast<int>(i)) throw PreconditionError("order is not a permutation");
  }
  auto remap = [&](const LinForm& l) {
    LinForm out = l;
    for (std::size_t i = 0; i < m; ++i) out.coeffs_x[i] = l.coeffs_x[static_cast<std::size_t>(order[i])];
    return out;
  };
  ClosedForm out = f;
  for (std::size_t i = 0; i < m; ++i) out.variables[i] = f.variables[static_cast<std::size_t>(order[i])];
  for (auto& v : out.variables) v.upper = remap(v.upper);
  for (auto& b : out.binomials) {
    b.top = remap(b.top);
    b.bottom = remap(b.bottom);
  }
  for (auto& s : out.signs) s.exponent = remap(s.exponent);
  return out;
}

}  // namespace egp
