#include "egp/pointcount/pointcount.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/common/parallel.hpp"

namespace egp {
namespace {

Polynomial linear_polynomial(const std::vector<std::int64_t>& coeffs) { return Polynomial::linear(coeffs); }

std::string format_linear(const std::vector<std::int64_t>& coeffs, std::string_view name) {
  std::string out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const std::int64_t c = coeffs[j];
    if (c == 0) continue;
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (c != 1 && c != -1) out += std::to_string(c < 0 ? -c : c);
    out += std::string(name) + std::to_string(j + 1);
  }
  return out.empty() ? "0" : out;
}

mpz_class factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

/// Zeros of `value` over F_p^vars, split into contiguous index chunks.
std::uint64_t count_zeros(int vars, std::uint64_t p, const CountOptions& options,
                          const std::function<std::uint64_t(const std::vector<std::uint64_t>&)>& value) {
  std::uint64_t total = 1;
  for (int i = 0; i < vars; ++i) {
    if (total > options.point_budget / p) {
      throw BudgetExceeded(std::to_string(p) + "^" + std::to_string(vars) + " points exceed the budget of " +
                           std::to_string(options.point_budget));
    }
    total *= p;
  }
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    std::vector<std::uint64_t> y(static_cast<std::size_t>(vars));
    std::uint64_t found = 0;
    for (std::uint64_t i = total * c / chunks; i < total * (c + 1) / chunks; ++i) {
      std::uint64_t rest = i;
      for (auto& v : y) {
        v = rest % p;
        rest /= p;
      }
      if (value(y) == 0) ++found;
    }
    partial[c] = found;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

}  // namespace

int LinearFormProduct::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.exponent;
  return d;
}

Polynomial LinearFormProduct::expand() const {
  Polynomial out = Polynomial::constant(variables, 1);
  for (const auto& f : factors) out = out * linear_polynomial(f.coeffs).pow(static_cast<unsigned>(f.exponent));
  return out;
}

std::string LinearFormProduct::to_string(std::string_view name) const {
  std::string out;
  for (const auto& f : factors) {
    out += "(" + format_linear(f.coeffs, name) + ")";
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out.empty() ? "1" : out;
}

LinearFormProduct permanent_polynomial(const Multigraph& g, std::optional<VertexId> special) {
  if (g.vertex_count() < 2 || !g.is_connected()) throw PreconditionError("permanent polynomials need a connected graph");
  const MatrixSource src = MatrixSource::from_graph("G", g, special);
  const FundamentalSpec& spec = src.spec;
  const int ne = src.matrix.cols();
  LinearFormProduct out;
  out.variables = static_cast<int>(spec.edge_factor) * ne;
  for (int r = 0; r < src.matrix.rows(); ++r) {
    LinearFactor f;
    f.exponent = static_cast<int>(spec.vertex_factor);
    f.coeffs.assign(static_cast<std::size_t>(out.variables), 0);
    for (std::int64_t copy = 0; copy < spec.edge_factor; ++copy) {
      for (int e = 0; e < ne; ++e) f.coeffs[static_cast<std::size_t>(copy * ne + e)] = src.matrix(r, e);
    }
    if (f.exponent % 2 == 0) {
      const auto lead = std::find_if(f.coeffs.begin(), f.coeffs.end(), [](std::int64_t c) { return c != 0; });
      if (lead != f.coeffs.end() && *lead < 0) {
        for (auto& c : f.coeffs) c = -c;
      }
    }
    out.factors.push_back(std::move(f));
  }
  return out;
}

std::uint64_t TildePolynomial::evaluate(const std::vector<std::uint64_t>& y, const Modulus& field) const {
  std::vector<std::uint64_t> powered(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) powered[i] = field.pow(y[i], static_cast<std::uint64_t>(power));
  std::uint64_t product = 1 % field.value();
  for (const auto& f : roots.factors) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
      if (f.coeffs[j] != 0) s = field.add(s, field.mul(field.reduce(f.coeffs[j]), powered[j]));
    }
    product = field.mul(product, s);
    if (product == 0) break;
  }
  return product;
}

Polynomial TildePolynomial::expand() const {
  const int n = roots.variables;
  Polynomial out = Polynomial::constant(n, 1);
  for (const auto& f : roots.factors) {
    Polynomial s(n);
    for (int j = 0; j < n; ++j) {
      if (f.coeffs[static_cast<std::size_t>(j)] == 0) continue;
      s += Polynomial::constant(n, f.coeffs[static_cast<std::size_t>(j)]) *
           Polynomial::variable(n, j).pow(static_cast<unsigned>(power));
    }
    out = out * s;
  }
  return out;
}

TildePolynomial tilde_polynomial(const Multigraph& g, std::optional<VertexId> special) {
  TildePolynomial t;
  t.roots = permanent_polynomial(g, special);
  t.power = t.roots.factors.empty() ? 1 : t.roots.factors.front().exponent;
  for (auto& f : t.roots.factors) f.exponent = 1;
  return t;
}

mpz_class tilde_point_count(const Multigraph& g, std::uint64_t p, std::optional<VertexId> special,
                            const CountOptions& options) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  const TildePolynomial t = tilde_polynomial(g, special);
  if (p != 2 && (p - 1) % static_cast<std::uint64_t>(t.power) != 0) {
    throw IneligiblePrime("tilde point counts need p = 1 mod " + std::to_string(t.power) + " or p = 2");
  }
  const Modulus field(p);
  const std::uint64_t zeros = count_zeros(t.roots.variables, p, options,
                                          [&](const std::vector<std::uint64_t>& y) { return t.evaluate(y, field); });
  return mpz_class(static_cast<unsigned long>(zeros));
}

PointCountRelation check_point_count_relation(const Multigraph& g, std::uint64_t p, std::optional<VertexId> special,
                                              const CountOptions& options) {
  const MatrixSource src = MatrixSource::from_graph("G", g, special);
  if (!src.spec.eligible(p)) throw IneligiblePrime(std::to_string(p) + " is not an eligible prime");
  PointCountRelation out;
  out.prime = p;
  out.count = tilde_point_count(g, p, special, options);
  const Modulus field(p);
  const auto r = static_cast<unsigned long>(src.spec.n_of(p));
  const mpz_class scale = factorial(static_cast<int>(r));
  mpz_class scaled;
  mpz_powm_ui(scaled.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(src.spec.lcm),
              mpz_class(static_cast<unsigned long>(p)).get_mpz_t());
  out.scaled = field.mul(mpz_class(scaled).get_ui(), field.reduce(out.count));
  EngineOptions engine;
  engine.engine = Engine::block;
  out.gperm = gperm_at_prime(src, p, engine).residue;
  out.sign_class = src.spec.sign_class(p);
  const bool flippable = out.sign_class == SignClass::flippable;
  const auto same = [&](std::uint64_t expected) {
    return out.gperm == expected || (flippable && out.gperm == field.neg(expected));
  };
  const bool odd_lcm = src.spec.lcm % 2 != 0;
  out.holds = same(out.scaled);
  out.holds_with_sign = same(odd_lcm ? out.scaled : field.neg(out.scaled));
  if (g.edge_count() == 2 * (g.vertex_count() - 1)) {
    out.phi4_sign = g.edge_count() % 4 == 0 ? 1 : -1;
    const std::uint64_t c = field.reduce(out.count);
    out.phi4_holds = same(*out.phi4_sign > 0 ? c : field.neg(c));
    out.phi4_holds_with_sign = same(*out.phi4_sign > 0 ? field.neg(c) : c);
  }
  return out;
}

ChevalleyCheck verify_chevalley(const Polynomial& f, std::uint64_t p) {
  const int n = f.variables();
  if (n < 1 || n > 4) throw PreconditionError("Chevalley-Warning checks need 1 to 4 variables");
  if (!is_prime(p) || p > 7) throw PreconditionError("Chevalley-Warning checks need a prime p <= 7");
  if (f.degree() > n) throw PreconditionError("polynomial degree exceeds the number of variables");
  ChevalleyCheck out;
  const Polynomial power = f.pow(static_cast<unsigned>(p - 1));
  const Modulus field(p);
  out.coefficient = field.reduce(power.coefficient(Monomial(static_cast<std::size_t>(n), static_cast<std::uint32_t>(p - 1))));
  const std::uint64_t zeros =
      count_zeros(n, p, CountOptions{}, [&](const std::vector<std::uint64_t>& x) { return f.evaluate_mod(x, field); });
  out.count = mpz_class(static_cast<unsigned long>(zeros));
  out.agree = out.coefficient == zeros % p;
  out.agree_with_sign = (n % 2 == 1 ? out.coefficient : field.neg(out.coefficient)) == zeros % p;
  return out;
}

ExtensionCheck verify_extension_identity(const LinearFormProduct& h, int r) {
  const int n = h.variables;
  if (r < 1) throw PreconditionError("extension order must be positive");
  if (r * n > 8) throw BudgetExceeded("extension identity checks are limited to 8 extended variables");
  for (const auto& f : h.factors) {
    if (static_cast<int>(f.coeffs.size()) != n) throw PreconditionError("factor length differs from variable count");
  }
  const int wide = r * n;
  Polynomial extended = Polynomial::constant(wide, 1);
  for (const auto& f : h.factors) {
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(wide));
    for (int k = 0; k < r; ++k) {
      for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(k * n + j)] = f.coeffs[static_cast<std::size_t>(j)];
    }
    extended = extended * Polynomial::linear(coeffs).pow(static_cast<unsigned>(f.exponent));
  }
  ExtensionCheck out;
  out.lhs = extended.coefficient(Monomial(static_cast<std::size_t>(wide), 1));
  mpz_class scale;
  const mpz_class rf = factorial(r);
  mpz_pow_ui(scale.get_mpz_t(), rf.get_mpz_t(), static_cast<unsigned long>(n));
  out.rhs = scale * h.expand().coefficient(Monomial(static_cast<std::size_t>(n), static_cast<std::uint32_t>(r)));
  out.holds = out.lhs == out.rhs;
  return out;
}

PowerSeries PowerSeries::one(int order) {
  PowerSeries s(order);
  s[0] = 1;
  return s;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  PowerSeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

PowerSeries PowerSeries::shifted(int k) const {
  if (k < 0) throw PreconditionError("negative shifts are not supported");
  PowerSeries out(order());
  for (int i = order(); i >= k; --i) out[i] = (*this)[i - k];
  return out;
}

PowerSeries eta_product(const std::vector<EtaTerm>& terms, int order) {
  if (order < 0) throw PreconditionError("series order must be non-negative");
  long weight = 0;
  for (const auto& t : terms) {
    if (t.multiplier < 1) throw PreconditionError("eta multipliers must be positive");
    weight += static_cast<long>(t.multiplier) * t.exponent;
  }
  if (weight % 24 != 0) {
    throw PreconditionError("non-integral leading power: sum of m*e = " + std::to_string(weight) + " is not a multiple of 24");
  }
  if (weight < 0) throw PreconditionError("eta product starts at a negative power of q");
  PowerSeries s = PowerSeries::one(order);
  for (const auto& t : terms) {
    for (int k = t.multiplier; k <= order; k += t.multiplier) {
      // Multiply by (1 - q^k)^e, or divide when e < 0.
      for (int rep = 0; rep < std::abs(t.exponent); ++rep) {
        if (t.exponent > 0) {
          for (int i = order; i >= k; --i) s[i] -= s[i - k];
        } else {
          for (int i = k; i <= order; ++i) s[i] += s[i - k];
        }
      }
    }
  }
  return s.shifted(static_cast<int>(weight / 24));
}

std::pair<int, std::vector<EtaTerm>> parse_eta_product(std::string_view text) {
  std::size_t i = 0;
  auto error = [&](const std::string& msg) { throw ParseError(msg, 1, static_cast<int>(i) + 1); };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() {
    skip();
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) error("expected a number");
    return std::stoi(std::string(text.substr(start, i - start)));
  };
  auto expect = [&](std::string_view word) {
    skip();
    if (text.substr(i, word.size()) != word) error("expected '" + std::string(word) + "'");
    i += word.size();
  };
  int sign = 1;
  skip();
  if (i < text.size() && text[i] == '-') {
    sign = -1;
    ++i;
  }
  std::vector<EtaTerm> terms;
  for (;;) {
    expect("eta(");
    skip();
    EtaTerm t;
    t.multiplier = (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ? number() : 1;
    expect("z)");
    skip();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip();
      int esign = 1;
      if (i < text.size() && text[i] == '-') {
        esign = -1;
        ++i;
      }
      t.exponent = esign * number();
    }
    terms.push_back(t);
    skip();
    if (i == text.size()) break;
    if (text[i] == '*') ++i;
  }
  return {sign, terms};
}

ModformReport compare_coefficients(const PermSequence& seq, const std::map<std::uint64_t, mpz_class>& coefficients,
                                   bool signed_match) {
  ModformReport out;
  for (const auto& e : seq.entries) {
    const auto it = coefficients.find(e.prime);
    if (it == coefficients.end()) {
      throw PreconditionError("no coefficient for p=" + std::to_string(e.prime) + ": series truncated too short");
    }
    ModformCheck c;
    c.prime = e.prime;
    c.coefficient = it->second;
    c.reduced = Modulus(e.prime).reduce(it->second);
    c.residue = e.residue;
    c.sign_class = e.sign_class;
    out.checks.push_back(c);
  }
  if (!signed_match) {
    for (const auto& c : out.checks) {
      if (c.sign_class != SignClass::flippable) continue;
      const std::uint64_t neg = c.reduced == 0 ? 0 : c.prime - c.reduced;
      if (c.residue == c.reduced && c.residue != neg) break;
      if (c.residue == neg && c.residue != c.reduced) {
        out.epsilon = -1;
        break;
      }
    }
  }
  out.match = true;
  for (auto& c : out.checks) {
    const bool flip = !signed_match && c.sign_class == SignClass::flippable && out.epsilon < 0;
    const std::uint64_t expected = flip && c.reduced != 0 ? c.prime - c.reduced : c.reduced;
    c.pass = c.residue == expected;
    if (!c.pass && out.match) {
      out.match = false;
      out.reason = "mismatch at p=" + std::to_string(c.prime);
    }
  }
  return out;
}

ModformReport compare_modform(const PermSequence& seq, const PowerSeries& series, bool signed_match) {
  std::map<std::uint64_t, mpz_class> coefficients;
  for (const auto& e : seq.entries) {
    if (e.prime > static_cast<std::uint64_t>(series.order())) {
      throw PreconditionError("series order " + std::to_string(series.order()) + " is below p=" + std::to_string(e.prime));
    }
    coefficients[e.prime] = series[static_cast<int>(e.prime)];
  }
  return compare_coefficients(seq, coefficients, signed_match);
}

std::map<std::uint64_t, mpz_class> parse_coefficient_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  std::map<std::uint64_t, mpz_class> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "p,a_p") throw ParseError("expected header 'p,a_p'", line_no, 1);
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'p,a_p'", line_no, 1);
    try {
      std::size_t used = 0;
      const auto p = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw ParseError("bad prime", line_no, 1);
      out[p] = mpz_class(line.substr(comma + 1));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad number", line_no, 1);
    }
  }
  if (!header) throw ParseError("missing header 'p,a_p'", line_no + 1, 1);
  return out;
}

}  // namespace egp
