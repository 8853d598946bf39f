#include "egp/matmod/polynomial.hpp"

#include <numeric>
#include <sstream>

#include "egp/common/error.hpp"

namespace egp {

Polynomial Polynomial::constant(int variables, const mpz_class& c) {
  Polynomial p(variables);
  p.add_term(Monomial(variables, 0), c);
  return p;
}

Polynomial Polynomial::variable(int variables, int index) {
  if (index < 0 || index >= variables) throw PreconditionError("variable index out of range");
  Polynomial p(variables);
  Monomial m(variables, 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

Polynomial Polynomial::linear(const std::vector<std::int64_t>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Polynomial p(n);
  for (int i = 0; i < n; ++i) {
    if (coeffs[i] == 0) continue;
    Monomial m(n, 0);
    m[i] = 1;
    p.add_term(m, static_cast<long>(coeffs[i]));
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(m.begin(), m.end(), 0U)));
  return d;
}

mpz_class Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.variables_ != variables_) throw PreconditionError("polynomials live in different rings");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.variables_ != variables_) throw PreconditionError("polynomials live in different rings");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_) throw PreconditionError("polynomials live in different rings");
  Polynomial out(a.variables_);
  Monomial m(a.variables_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.variables_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(variables_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::reduced_mod(std::uint64_t p) const {
  const Modulus field(p);
  Polynomial out(variables_);
  for (const auto& [m, c] : terms_) out.add_term(m, static_cast<unsigned long>(field.reduce(c)));
  return out;
}

std::uint64_t Polynomial::evaluate_mod(const std::vector<std::uint64_t>& point, const Modulus& field) const {
  if (static_cast<int>(point.size()) != variables_) throw PreconditionError("evaluation point has the wrong size");
  std::uint64_t total = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t t = field.reduce(c);
    for (int i = 0; i < variables_ && t != 0; ++i) {
      if (m[i] > 0) t = field.mul(t, field.pow(point[i], m[i]));
    }
    total = field.add(total, t);
  }
  return total;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpz_class mag = abs(c);
    if (c < 0) {
      out << (first ? "-" : " - ");
    } else if (!first) {
      out << " + ";
    }
    first = false;
    bool any = false;
    if (mag != 1) {
      out << mag.get_str();
      any = true;
    }
    for (int i = 0; i < variables_; ++i) {
      if (m[i] == 0) continue;
      if (any) out << '*';
      out << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
      if (m[i] > 1) out << '^' << m[i];
      any = true;
    }
    if (!any) out << '1';
  }
  return out.str();
}

}  // namespace egp
