#include "egp/ctwo/ctwo.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "egp/common/error.hpp"
#include "egp/common/number_theory.hpp"
#include "egp/common/parallel.hpp"
#include "egp/gperm/gperm.hpp"

namespace egp {
namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

/// p^n, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(std::uint64_t p, int n, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > cap / p) return std::nullopt;
    r *= p;
  }
  return r;
}

std::uint64_t require_budget(std::uint64_t p, int n, const CountOptions& options, const char* what) {
  const auto total = bounded_power(p, n, options.point_budget);
  if (!total) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(p) + "^" + std::to_string(n) +
                         " points exceed the budget of " + std::to_string(options.point_budget));
  }
  return *total;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
}

/// Writes the base-p digits of `index` into x[0..count).
void decode(std::uint64_t index, std::uint64_t p, std::vector<std::uint64_t>& x, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = index % p;
    index /= p;
  }
}

/// Counts points of F_p^vars satisfying `accept`, split into contiguous index chunks.
std::uint64_t count_points(int vars, std::uint64_t p, const CountOptions& options, const char* what,
                           const std::function<bool(const std::vector<std::uint64_t>&)>& accept) {
  const std::uint64_t total = require_budget(p, vars, options, what);
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    const std::uint64_t lo = total * c / chunks;
    const std::uint64_t hi = total * (c + 1) / chunks;
    std::vector<std::uint64_t> x(static_cast<std::size_t>(vars));
    std::uint64_t found = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      decode(i, p, x, x.size());
      if (accept(x)) ++found;
    }
    partial[c] = found;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

/// Points of F_p^vars where some factor vanishes. Every factor must be multilinear: the last k
/// coordinates are interpolated from the 2^k corners of {0,1}^k and then swept exhaustively.
using FactorEvaluator = std::function<void(const std::vector<std::uint64_t>&, std::vector<std::uint64_t>&)>;

std::uint64_t count_multilinear_zeros(int vars, std::uint64_t p, int factors, const CountOptions& options,
                                      const char* what, const FactorEvaluator& evaluate) {
  require_budget(p, vars, options, what);
  const Modulus field(p);
  const int k = std::min(vars, 3);
  const std::size_t corners = std::size_t{1} << k;
  const auto inner = static_cast<std::size_t>(*bounded_power(p, k, ~std::uint64_t{0}));
  const auto outer = *bounded_power(p, vars - k, ~std::uint64_t{0});
  const auto head = static_cast<std::size_t>(vars - k);

  // monomial[pt * corners + S] = prod_{i in S} y_i at inner point pt.
  std::vector<std::uint64_t> monomial(inner * corners);
  {
    std::vector<std::uint64_t> y(static_cast<std::size_t>(k));
    for (std::size_t pt = 0; pt < inner; ++pt) {
      decode(pt, p, y, y.size());
      for (std::size_t s = 0; s < corners; ++s) {
        std::uint64_t m = 1 % p;
        for (int i = 0; i < k; ++i) {
          if (s >> i & 1U) m = field.mul(m, y[static_cast<std::size_t>(i)]);
        }
        monomial[pt * corners + s] = m;
      }
    }
  }

  const std::uint64_t chunks = std::min<std::uint64_t>(outer, 64);
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    const std::uint64_t lo = outer * c / chunks;
    const std::uint64_t hi = outer * (c + 1) / chunks;
    std::vector<std::uint64_t> x(static_cast<std::size_t>(vars));
    std::vector<std::uint64_t> values(static_cast<std::size_t>(factors));
    std::vector<std::uint64_t> coeff(static_cast<std::size_t>(factors) * corners);
    std::uint64_t found = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      decode(i, p, x, head);
      for (std::size_t s = 0; s < corners; ++s) {
        for (int j = 0; j < k; ++j) x[head + static_cast<std::size_t>(j)] = s >> j & 1U;
        evaluate(x, values);
        for (int f = 0; f < factors; ++f) coeff[static_cast<std::size_t>(f) * corners + s] = values[static_cast<std::size_t>(f)];
      }
      // Moebius inversion over subsets turns corner values into monomial coefficients.
      for (int f = 0; f < factors; ++f) {
        std::uint64_t* cf = coeff.data() + static_cast<std::size_t>(f) * corners;
        for (int j = 0; j < k; ++j) {
          for (std::size_t s = 0; s < corners; ++s) {
            if (s >> j & 1U) cf[s] = field.sub(cf[s], cf[s ^ (std::size_t{1} << j)]);
          }
        }
      }
      for (std::size_t pt = 0; pt < inner; ++pt) {
        const std::uint64_t* mono = monomial.data() + pt * corners;
        for (int f = 0; f < factors; ++f) {
          const std::uint64_t* cf = coeff.data() + static_cast<std::size_t>(f) * corners;
          std::uint64_t v = 0;
          for (std::size_t s = 0; s < corners; ++s) v = field.add(v, field.mul(cf[s], mono[s]));
          if (v == 0) {
            ++found;
            break;
          }
        }
      }
    }
    partial[c] = found;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

/// m without the listed rows and columns.
template <typename T>
Matrix<T> strike(const Matrix<T>& m, const std::vector<EdgeId>& rows, const std::vector<EdgeId>& cols) {
  auto keep = [](int n, const std::vector<EdgeId>& gone) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
      if (std::find(gone.begin(), gone.end(), i) == gone.end()) out.push_back(i);
    }
    return out;
  };
  const auto r = keep(m.rows(), rows);
  const auto c = keep(m.cols(), cols);
  Matrix<T> out(static_cast<int>(r.size()), static_cast<int>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) out(static_cast<int>(i), static_cast<int>(j)) = m(r[i], c[j]);
  }
  return out;
}

void check_edges(const Multigraph& g, const std::vector<EdgeId>& edges) {
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.edge_count()) throw PreconditionError("edge id " + std::to_string(e) + " out of range");
  }
}

std::vector<EdgeId> merged(std::initializer_list<const std::vector<EdgeId>*> sets) {
  std::vector<EdgeId> out;
  for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool contains(const std::vector<EdgeId>& v, EdgeId e) { return std::find(v.begin(), v.end(), e) != v.end(); }

/// Monomial x_S over `vars` variables with coefficient c.
Polynomial monomial_term(int vars, const std::vector<int>& support, const mpz_class& c) {
  Polynomial term = Polynomial::constant(vars, c);
  for (int v : support) term = term * Polynomial::variable(vars, v);
  return term;
}

/// Edge sets of `candidates` that form spanning trees of g with `deleted` removed and
/// `contracted` contracted. Empty when the contracted edges contain a cycle.
std::vector<std::vector<EdgeId>> minor_trees(const Multigraph& g, const std::vector<EdgeId>& contracted,
                                             const std::vector<EdgeId>& candidates) {
  UnionFind base(g.vertex_count());
  for (EdgeId e : contracted) {
    if (!base.unite(g.edge(e).tail, g.edge(e).head)) return {};
  }
  int classes = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (base.find(v) == v) ++classes;
  }
  const int need = classes - 1;
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> chosen;
  std::function<void(std::size_t, UnionFind&)> walk = [&](std::size_t i, UnionFind& uf) {
    if (static_cast<int>(chosen.size()) == need) {
      out.push_back(chosen);
      return;
    }
    if (candidates.size() - i < static_cast<std::size_t>(need) - chosen.size()) return;
    const Edge& e = g.edge(candidates[i]);
    if (uf.find(e.tail) != uf.find(e.head)) {
      UnionFind next = uf;
      next.unite(e.tail, e.head);
      chosen.push_back(candidates[i]);
      walk(i + 1, next);
      chosen.pop_back();
    }
    walk(i + 1, uf);
  };
  walk(0, base);
  return out;
}

bool probably_nonzero(const Multigraph& g, const std::vector<EdgeId>& rows, const std::vector<EdgeId>& cols,
                      const std::vector<EdgeId>& zeroed, const KirchhoffContext& ctx) {
  const Modulus field(1'000'000'007);
  std::mt19937_64 rng(0x5eed);
  std::vector<std::uint64_t> x(static_cast<std::size_t>(g.edge_count()));
  for (int trial = 0; trial < 4; ++trial) {
    for (auto& v : x) v = rng() % field.value();
    for (EdgeId e : zeroed) x[static_cast<std::size_t>(e)] = 0;
    if (determinant_mod(strike(ctx.modified_laplacian(x, field), rows, cols), field) != 0) return true;
  }
  return false;
}

}  // namespace

std::vector<std::vector<EdgeId>> spanning_trees(const Multigraph& g) {
  if (g.edge_count() > 64) throw PreconditionError("spanning tree enumeration is limited to 64 edges");
  std::vector<EdgeId> all(static_cast<std::size_t>(g.edge_count()));
  std::iota(all.begin(), all.end(), 0);
  return minor_trees(g, {}, all);
}

KirchhoffContext::KirchhoffContext(Multigraph g)
    : graph_(std::move(g)), trees_(spanning_trees(graph_)), incidence_(reduced_incidence(graph_, graph_.vertex_count() - 1)) {
  const std::uint64_t full =
      graph_.edge_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << graph_.edge_count()) - 1;
  for (const auto& t : trees_) {
    std::uint64_t mask = 0;
    for (EdgeId e : t) mask |= std::uint64_t{1} << e;
    complement_masks_.push_back(full & ~mask);
  }
}

ResidueMatrix KirchhoffContext::modified_laplacian(const std::vector<std::uint64_t>& weights, const Modulus& field) const {
  const int ne = graph_.edge_count();
  const int nr = incidence_.rows();
  ResidueMatrix m(ne + nr, ne + nr, 0);
  for (int e = 0; e < ne; ++e) m(e, e) = weights[static_cast<std::size_t>(e)] % field.value();
  for (int r = 0; r < nr; ++r) {
    for (int e = 0; e < ne; ++e) {
      m(e, ne + r) = field.reduce(incidence_(r, e));
      m(ne + r, e) = field.reduce(-incidence_(r, e));
    }
  }
  return m;
}

IntMatrix KirchhoffContext::modified_laplacian(const std::vector<std::int64_t>& weights) const {
  const int ne = graph_.edge_count();
  const int nr = incidence_.rows();
  IntMatrix m(ne + nr, ne + nr, 0);
  for (int e = 0; e < ne; ++e) m(e, e) = weights[static_cast<std::size_t>(e)];
  for (int r = 0; r < nr; ++r) {
    for (int e = 0; e < ne; ++e) {
      m(e, ne + r) = incidence_(r, e);
      m(ne + r, e) = -incidence_(r, e);
    }
  }
  return m;
}

std::uint64_t KirchhoffContext::tree_sum(const std::vector<std::uint64_t>& x, const Modulus& field) const {
  std::uint64_t total = 0;
  for (std::uint64_t mask : complement_masks_) {
    std::uint64_t term = 1 % field.value();
    for (std::uint64_t m = mask; m != 0 && term != 0; m &= m - 1) {
      term = field.mul(term, x[static_cast<std::size_t>(__builtin_ctzll(m))]);
    }
    total = field.add(total, term);
  }
  return total;
}

std::uint64_t KirchhoffContext::laplacian_det(const std::vector<std::uint64_t>& x, const Modulus& field) const {
  return determinant_mod(modified_laplacian(x, field), field);
}

Polynomial KirchhoffContext::polynomial() const {
  const int ne = graph_.edge_count();
  Polynomial out(ne);
  for (std::uint64_t mask : complement_masks_) {
    std::vector<int> support;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) support.push_back(__builtin_ctzll(m));
    out += monomial_term(ne, support, 1);
  }
  return out;
}

const char* to_string(PsiEvaluator e) noexcept { return e == PsiEvaluator::tree_sum ? "tree-sum" : "laplacian-det"; }

mpz_class kirchhoff_point_count(const Multigraph& g, std::uint64_t p, PsiEvaluator evaluator,
                                const CountOptions& options) {
  if (g.vertex_count() < 3) throw PreconditionError("point counts need at least three vertices");
  require_prime(p);
  require_budget(p, g.edge_count(), options, "Kirchhoff point count");
  const KirchhoffContext ctx(g);
  const Modulus field(p);
  const std::uint64_t zeros = count_multilinear_zeros(
      g.edge_count(), p, 1, options, "Kirchhoff point count",
      [&](const std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& out) {
        out[0] = evaluator == PsiEvaluator::tree_sum ? ctx.tree_sum(x, field) : ctx.laplacian_det(x, field);
      });
  return mpz_class(static_cast<unsigned long>(zeros));
}

const char* to_string(C2Method m) noexcept { return m == C2Method::point_count ? "point-count" : "dodgson"; }

C2Entry c2_at_prime(const Multigraph& g, std::uint64_t p, const C2Options& options) {
  if (g.vertex_count() < 3) throw PreconditionError("c2 needs at least three vertices");
  require_prime(p);
  C2Entry out;
  out.prime = p;
  if (bounded_power(p, g.edge_count(), options.count.point_budget) || !options.dodgson_fallback) {
    const mpz_class count = kirchhoff_point_count(g, p, PsiEvaluator::laplacian_det, options.count);
    const mpz_class p2 = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    if (count % p2 != 0) {
      throw Error("internal: p^2 does not divide the point count " + count.get_str() + " at p=" + std::to_string(p));
    }
    const mpz_class q = count / p2;
    out.point_count = count;
    out.c2 = mpz_class(q % static_cast<unsigned long>(p)).get_ui();
    return out;
  }
  const auto triple = default_dodgson_triple(g);
  if (!triple) throw PreconditionError("no edge triple gives nonzero Dodgson polynomials");
  out.method = C2Method::dodgson;
  out.c2 = dodgson_c2(g, p, *triple, options.count);
  return out;
}

std::vector<C2Entry> c2_sequence(const Multigraph& g, std::uint64_t max_prime, const C2Options& options) {
  std::vector<C2Entry> out;
  for (std::uint64_t p : primes_in_range(2, max_prime)) out.push_back(c2_at_prime(g, p, options));
  return out;
}

std::string c2_to_csv(const std::vector<C2Entry>& entries) {
  std::ostringstream os;
  os << "prime,count,c2\n";
  for (const auto& e : entries) {
    os << e.prime << ',' << (e.point_count ? e.point_count->get_str() : std::string()) << ',' << e.c2 << '\n';
  }
  return os.str();
}

Polynomial dodgson_polynomial(const Multigraph& g, const std::vector<EdgeId>& rows, const std::vector<EdgeId>& cols,
                              const std::vector<EdgeId>& zeroed) {
  check_edges(g, rows);
  check_edges(g, cols);
  check_edges(g, zeroed);
  if (rows.size() != cols.size()) throw PreconditionError("Dodgson polynomials need |I| = |J|");
  const std::vector<EdgeId> fixed = merged({&rows, &cols, &zeroed});
  std::vector<EdgeId> free;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!contains(fixed, e)) free.push_back(e);
  }
  if (free.size() > 16) throw BudgetExceeded("symbolic Dodgson polynomials are limited to 16 free edges");
  const KirchhoffContext ctx(g);
  const std::size_t corners = std::size_t{1} << free.size();
  std::vector<mpz_class> coeff(corners);
  std::vector<std::int64_t> w(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t s = 0; s < corners; ++s) {
    for (std::size_t i = 0; i < free.size(); ++i) w[static_cast<std::size_t>(free[i])] = (s >> i) & 1U;
    coeff[s] = determinant_exact(strike(ctx.modified_laplacian(w), rows, cols));
  }
  for (std::size_t j = 0; j < free.size(); ++j) {
    for (std::size_t s = 0; s < corners; ++s) {
      if (s >> j & 1U) coeff[s] -= coeff[s ^ (std::size_t{1} << j)];
    }
  }
  Polynomial out(g.edge_count());
  for (std::size_t s = 0; s < corners; ++s) {
    if (coeff[s] == 0) continue;
    std::vector<int> support;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (s >> i & 1U) support.push_back(free[i]);
    }
    out += monomial_term(g.edge_count(), support, coeff[s]);
  }
  return out;
}

Polynomial dodgson_tree_polynomial(const Multigraph& g, const std::vector<EdgeId>& rows,
                                   const std::vector<EdgeId>& cols, const std::vector<EdgeId>& zeroed) {
  check_edges(g, rows);
  check_edges(g, cols);
  check_edges(g, zeroed);
  const std::vector<EdgeId> fixed = merged({&rows, &cols, &zeroed});
  std::vector<EdgeId> candidates;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!contains(fixed, e)) candidates.push_back(e);
  }
  auto contracted = [&](const std::vector<EdgeId>& removed, const std::vector<EdgeId>& other) {
    std::vector<EdgeId> c = zeroed;
    for (EdgeId e : other) {
      if (!contains(removed, e)) c.push_back(e);
    }
    return c;
  };
  const auto first = minor_trees(g, contracted(rows, cols), candidates);
  const auto second = minor_trees(g, contracted(cols, rows), candidates);
  Polynomial out(g.edge_count());
  for (const auto& f : first) {
    if (std::find(second.begin(), second.end(), f) == second.end()) continue;
    std::vector<int> support;
    for (EdgeId e : candidates) {
      if (!contains(f, e)) support.push_back(e);
    }
    out += monomial_term(g.edge_count(), support, 1);
  }
  return out;
}

std::uint64_t dodgson_c2(const Multigraph& g, std::uint64_t p, const DodgsonTriple& t, const CountOptions& options) {
  check_edges(g, {t.a, t.b, t.c});
  if (t.a == t.b || t.a == t.c || t.b == t.c) throw PreconditionError("Dodgson edges must be distinct");
  require_prime(p);
  const KirchhoffContext ctx(g);
  const std::vector<EdgeId> rows1{t.a, t.c};
  const std::vector<EdgeId> cols1{t.b, t.c};
  const std::vector<EdgeId> rows2{t.a};
  const std::vector<EdgeId> cols2{t.b};
  if (!probably_nonzero(g, rows1, cols1, {}, ctx) || !probably_nonzero(g, rows2, cols2, {t.c}, ctx)) {
    throw PreconditionError("edge triple makes a Dodgson polynomial vanish identically");
  }
  std::vector<EdgeId> free;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e != t.a && e != t.b && e != t.c) free.push_back(e);
  }
  const Modulus field(p);
  const std::uint64_t zeros = count_multilinear_zeros(
      static_cast<int>(free.size()), p, 2, options, "Dodgson point count",
      [&](const std::vector<std::uint64_t>& y, std::vector<std::uint64_t>& out) {
        std::vector<std::uint64_t> x(static_cast<std::size_t>(g.edge_count()), 0);
        for (std::size_t i = 0; i < free.size(); ++i) x[static_cast<std::size_t>(free[i])] = y[i];
        const ResidueMatrix k = ctx.modified_laplacian(x, field);
        out[0] = determinant_mod(strike(k, rows1, cols1), field);
        out[1] = determinant_mod(strike(k, rows2, cols2), field);
      });
  return field.neg(zeros % p);
}

std::optional<DodgsonTriple> default_dodgson_triple(const Multigraph& g) {
  if (g.edge_count() < 3) return std::nullopt;
  const KirchhoffContext ctx(g);
  for (EdgeId c = 0; c < g.edge_count(); ++c) {
    for (EdgeId a = 0; a < g.edge_count(); ++a) {
      for (EdgeId b = a + 1; b < g.edge_count(); ++b) {
        if (a == c || b == c) continue;
        if (probably_nonzero(g, {a, c}, {b, c}, {}, ctx) && probably_nonzero(g, {a}, {b}, {c}, ctx)) {
          return DodgsonTriple{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

FlowCount count_flows(const Multigraph& g, std::uint64_t p, const CountOptions& options) {
  if (!g.is_connected()) throw PreconditionError("flow counts need a connected graph");
  require_prime(p);
  FlowCount out;
  if (!bounded_power(p, g.edge_count(), options.point_budget)) {
    out.brute_force = false;
    mpz_ui_pow_ui(out.count.get_mpz_t(), p, static_cast<unsigned long>(g.loop_number()));
    return out;
  }
  const Modulus field(p);
  const auto nv = static_cast<std::size_t>(g.vertex_count());
  const std::uint64_t n = count_points(g.edge_count(), p, options, "flow count", [&](const std::vector<std::uint64_t>& f) {
    std::vector<std::uint64_t> net(nv, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      net[static_cast<std::size_t>(ed.head)] = field.add(net[static_cast<std::size_t>(ed.head)], f[static_cast<std::size_t>(e)]);
      net[static_cast<std::size_t>(ed.tail)] = field.sub(net[static_cast<std::size_t>(ed.tail)], f[static_cast<std::size_t>(e)]);
    }
    return std::all_of(net.begin(), net.end(), [](std::uint64_t v) { return v == 0; });
  });
  out.count = mpz_class(static_cast<unsigned long>(n));
  return out;
}

mpz_class schwinger_solution_count(const Multigraph& g, std::uint64_t p, const std::vector<std::uint64_t>& flow,
                                   const CountOptions& options) {
  require_prime(p);
  if (flow.size() != static_cast<std::size_t>(g.edge_count())) throw PreconditionError("flow needs one value per edge");
  const Modulus field(p);
  std::vector<std::uint64_t> net(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const std::uint64_t f = flow[static_cast<std::size_t>(e)];
    if (f >= p) throw PreconditionError("flow values must be residues mod p");
    const Edge& ed = g.edge(e);
    net[static_cast<std::size_t>(ed.head)] = field.add(net[static_cast<std::size_t>(ed.head)], f);
    net[static_cast<std::size_t>(ed.tail)] = field.sub(net[static_cast<std::size_t>(ed.tail)], f);
  }
  if (std::any_of(net.begin(), net.end(), [](std::uint64_t v) { return v != 0; })) {
    throw PreconditionError("not a flow: conservation fails");
  }
  // Potentials are propagated along a spanning forest; the remaining edges are then checked.
  UnionFind uf(g.vertex_count());
  std::vector<EdgeId> tree;
  std::vector<EdgeId> rest;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    (uf.unite(g.edge(e).tail, g.edge(e).head) ? tree : rest).push_back(e);
  }
  // Order tree edges so that each one touches an already reached vertex.
  std::vector<bool> reached(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<EdgeId> order;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (reached[static_cast<std::size_t>(root)] || uf.find(root) != root) continue;
    reached[static_cast<std::size_t>(root)] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (EdgeId e : tree) {
        const Edge& ed = g.edge(e);
        if (reached[static_cast<std::size_t>(ed.tail)] != reached[static_cast<std::size_t>(ed.head)]) {
          reached[static_cast<std::size_t>(ed.tail)] = reached[static_cast<std::size_t>(ed.head)] = true;
          order.push_back(e);
          grew = true;
        }
      }
    }
  }
  const auto nv = static_cast<std::size_t>(g.vertex_count());
  const std::uint64_t n = count_points(g.edge_count(), p, options, "Schwinger count", [&](const std::vector<std::uint64_t>& x) {
    std::vector<std::uint64_t> phi(nv, 0);
    std::vector<bool> set(nv, false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (uf.find(v) == v) set[static_cast<std::size_t>(v)] = true;
    }
    for (EdgeId e : order) {
      const Edge& ed = g.edge(e);
      const std::uint64_t t = field.mul(x[static_cast<std::size_t>(e)], flow[static_cast<std::size_t>(e)]);
      const auto h = static_cast<std::size_t>(ed.head);
      const auto tl = static_cast<std::size_t>(ed.tail);
      if (set[tl]) {
        phi[h] = field.add(phi[tl], t);
        set[h] = true;
      } else {
        phi[tl] = field.sub(phi[h], t);
        set[tl] = true;
      }
    }
    for (EdgeId e : rest) {
      const Edge& ed = g.edge(e);
      const std::uint64_t t = field.mul(x[static_cast<std::size_t>(e)], flow[static_cast<std::size_t>(e)]);
      if (field.sub(phi[static_cast<std::size_t>(ed.head)], phi[static_cast<std::size_t>(ed.tail)]) != t) return false;
    }
    return true;
  });
  return mpz_class(static_cast<unsigned long>(n));
}

int schwinger_exponent(const Multigraph& g, const std::vector<std::uint64_t>& flow) {
  if (flow.size() != static_cast<std::size_t>(g.edge_count())) throw PreconditionError("flow needs one value per edge");
  if (!g.is_connected()) throw PreconditionError("Schwinger exponent needs a connected graph");
  UnionFind uf(g.vertex_count());
  int zeros = 0;
  int components = g.vertex_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (flow[static_cast<std::size_t>(e)] != 0) continue;
    ++zeros;
    if (uf.unite(g.edge(e).tail, g.edge(e).head)) --components;
  }
  return zeros + components - 1;
}

}  // namespace egp
