#include "egp/closedform/generate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "egp/common/error.hpp"

namespace egp {
namespace {

std::int64_t mod2(std::int64_t x) { return ((x % 2) + 2) % 2; }

LinForm scaled_sum(const LinForm& a, std::int64_t sa, const LinForm& b, std::int64_t sb) {
  LinForm out = a;
  out.coeff_n = sa * a.coeff_n + sb * b.coeff_n;
  out.constant = sa * a.constant + sb * b.constant;
  for (std::size_t i = 0; i < out.coeffs_x.size(); ++i) out.coeffs_x[i] = sa * a.coeffs_x[i] + sb * b.coeffs_x[i];
  return out;
}

/// True when `a` should represent the pair {a, top - a}.
bool preferred(const LinForm& a, const LinForm& b) {
  for (std::size_t i = 0; i < a.coeffs_x.size(); ++i) {
    if (a.coeffs_x[i] != b.coeffs_x[i]) {
      // Prefer a positive leading variable coefficient.
      const std::int64_t first_a = a.coeffs_x[i];
      if (first_a > 0 && b.coeffs_x[i] <= 0) return true;
      if (first_a <= 0 && b.coeffs_x[i] > 0) return false;
      return first_a > b.coeffs_x[i];
    }
  }
  return std::pair{a.coeff_n, a.constant} <= std::pair{b.coeff_n, b.constant};
}

void check_preconditions(const Multigraph& g, VertexId special) {
  if (special < 0 || special >= g.vertex_count()) throw PreconditionError("special vertex out of range");
  if (g.vertex_count() < 2) throw PreconditionError("closed forms need at least two vertices");
  if (g.has_loops()) throw PreconditionError("closed forms need a loopless graph");
  if (!g.is_connected()) throw PreconditionError("closed forms need a connected graph");
  std::vector<std::set<VertexId>> neighbours(static_cast<std::size_t>(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    neighbours[static_cast<std::size_t>(e.tail)].insert(e.head);
    neighbours[static_cast<std::size_t>(e.head)].insert(e.tail);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (neighbours[static_cast<std::size_t>(v)].size() == 1) {
      throw PreconditionError("vertex " + std::to_string(v) + " has exactly one neighbour");
    }
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
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

ClosedForm zero_formula(const FundamentalSpec& spec) {
  ClosedForm f;
  f.vertex_factor = spec.vertex_factor;
  f.edge_factor = spec.edge_factor;
  f.has_sum = true;
  f.binomials.push_back({LinForm::of_n(0, 0), LinForm::of_n(0, 0, 1), 1});
  return f;
}

}  // namespace

std::vector<VertexId> greedy_feedback_vertices(const Multigraph& g, VertexId special) {
  const auto nv = static_cast<std::size_t>(g.vertex_count());
  std::vector<bool> removed(nv, false);
  removed[static_cast<std::size_t>(special)] = true;
  std::vector<VertexId> chosen;
  for (;;) {
    // Strip to the 2-core of the remaining graph, counting parallel edges separately.
    std::vector<bool> alive(nv);
    for (std::size_t v = 0; v < nv; ++v) alive[v] = !removed[v];
    std::vector<int> degree(nv, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      std::fill(degree.begin(), degree.end(), 0);
      for (const Edge& e : g.edges()) {
        if (alive[static_cast<std::size_t>(e.tail)] && alive[static_cast<std::size_t>(e.head)]) {
          ++degree[static_cast<std::size_t>(e.tail)];
          ++degree[static_cast<std::size_t>(e.head)];
        }
      }
      for (std::size_t v = 0; v < nv; ++v) {
        if (alive[v] && degree[v] <= 1) {
          alive[v] = false;
          changed = true;
        }
      }
    }
    VertexId best = -1;
    for (std::size_t v = 0; v < nv; ++v) {
      if (alive[v] && (best < 0 || degree[v] > degree[static_cast<std::size_t>(best)])) best = static_cast<VertexId>(v);
    }
    if (best < 0) return chosen;
    chosen.push_back(best);
    removed[static_cast<std::size_t>(best)] = true;
  }
}

ClosedForm generate_closed_form(const Multigraph& g, VertexId special, const GenerateOptions& options) {
  check_preconditions(g, special);
  const FundamentalSpec spec = fundamental_spec(g);
  const std::int64_t vf = spec.vertex_factor;
  const std::int64_t ef = spec.edge_factor;
  const int nv = g.vertex_count();
  const int ne = g.edge_count();

  const std::vector<VertexId> feedback = options.feedback_vertices.value_or(greedy_feedback_vertices(g, special));
  std::vector<bool> in_feedback(static_cast<std::size_t>(nv), false);
  for (VertexId v : feedback) {
    if (v < 0 || v >= nv || v == special) throw PreconditionError("feedback vertex out of range");
    in_feedback[static_cast<std::size_t>(v)] = true;
  }

  auto at_special = [&](EdgeId e) { return g.edge(e).tail == special || g.edge(e).head == special; };

  // Balance per component of g - special.
  {
    UnionFind comp(nv);
    for (EdgeId e = 0; e < ne; ++e) {
      if (!at_special(e)) comp.unite(g.edge(e).tail, g.edge(e).head);
    }
    std::vector<std::int64_t> weight(static_cast<std::size_t>(nv), 0);
    for (VertexId v = 0; v < nv; ++v) {
      if (v != special) weight[static_cast<std::size_t>(comp.find(v))] += vf;
    }
    for (EdgeId e = 0; e < ne; ++e) {
      const Edge& ed = g.edge(e);
      const VertexId inner = ed.tail == special ? ed.head : ed.tail;
      weight[static_cast<std::size_t>(comp.find(inner))] -= ef;
    }
    if (std::any_of(weight.begin(), weight.end(), [](std::int64_t w) { return w != 0; })) return zero_formula(spec);
  }

  // Spanning forest of g - special, taking edges away from the feedback set first.
  std::vector<bool> in_tree(static_cast<std::size_t>(ne), false);
  UnionFind forest(nv);
  for (int pass = 0; pass < 2; ++pass) {
    for (EdgeId e = 0; e < ne; ++e) {
      if (at_special(e)) continue;
      const Edge& ed = g.edge(e);
      const bool touches_feedback =
          in_feedback[static_cast<std::size_t>(ed.tail)] || in_feedback[static_cast<std::size_t>(ed.head)];
      if (touches_feedback != (pass == 1)) continue;
      if (forest.unite(ed.tail, ed.head)) in_tree[static_cast<std::size_t>(e)] = true;
    }
  }

  std::vector<EdgeId> chords;
  for (EdgeId e = 0; e < ne; ++e) {
    if (!at_special(e) && !in_tree[static_cast<std::size_t>(e)]) chords.push_back(e);
  }
  const std::size_t m = chords.size();

  std::vector<std::optional<LinForm>> y(static_cast<std::size_t>(ne));
  for (std::size_t i = 0; i < m; ++i) {
    LinForm x = LinForm::of_n(0, m);
    x.coeffs_x[i] = 1;
    y[static_cast<std::size_t>(chords[i])] = x;
  }

  // Peel leaves of the forest; the constraint at a leaf fixes its last tree edge.
  std::vector<int> tree_degree(static_cast<std::size_t>(nv), 0);
  for (EdgeId e = 0; e < ne; ++e) {
    if (!in_tree[static_cast<std::size_t>(e)]) continue;
    ++tree_degree[static_cast<std::size_t>(g.edge(e).tail)];
    ++tree_degree[static_cast<std::size_t>(g.edge(e).head)];
  }
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < nv; ++v) {
    if (tree_degree[static_cast<std::size_t>(v)] == 1) queue.push_back(v);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId v = queue[qi];
    if (tree_degree[static_cast<std::size_t>(v)] != 1) continue;
    EdgeId open = -1;
    LinForm rest = LinForm::of_n(0, m);
    for (EdgeId e : g.incident_edges(v)) {
      const Edge& ed = g.edge(e);
      if (at_special(e)) {
        rest.coeff_n += ef;
      } else if (!y[static_cast<std::size_t>(e)]) {
        open = e;
      } else if (ed.head == v) {
        rest = scaled_sum(rest, 1, *y[static_cast<std::size_t>(e)], 1);
      } else {
        rest = scaled_sum(rest, 1, *y[static_cast<std::size_t>(e)], -1);
        rest.coeff_n += ef;
      }
    }
    const LinForm target = LinForm::of_n(vf, m);
    LinForm solved = scaled_sum(target, 1, rest, -1);  // contribution required from `open`
    if (g.edge(open).tail == v) {
      solved = scaled_sum(LinForm::of_n(ef, m), 1, solved, -1);
    }
    y[static_cast<std::size_t>(open)] = solved;
    --tree_degree[static_cast<std::size_t>(v)];
    const Edge& oe = g.edge(open);
    const VertexId other = oe.tail == v ? oe.head : oe.tail;
    if (--tree_degree[static_cast<std::size_t>(other)] == 1) queue.push_back(other);
  }

  ClosedForm f;
  f.vertex_factor = vf;
  f.edge_factor = ef;
  f.factorials.push_back({LinForm::of_n(vf, m), nv - 1});
  for (std::size_t i = 0; i < m; ++i) f.variables.push_back({"x" + std::to_string(i), LinForm::of_n(ef, m)});

  const LinForm top = LinForm::of_n(ef, m);
  LinForm sign = LinForm::of_n(0, m);
  for (EdgeId e = 0; e < ne; ++e) {
    const Edge& ed = g.edge(e);
    if (at_special(e)) {
      if (ed.head == special) sign.coeff_n += ef;
      continue;
    }
    const LinForm& ye = *y[static_cast<std::size_t>(e)];
    const LinForm complement = scaled_sum(top, 1, ye, -1);
    sign = scaled_sum(sign, 1, complement, 1);
    const LinForm& bottom = preferred(ye, complement) ? ye : complement;
    auto same = std::find_if(f.binomials.begin(), f.binomials.end(),
                             [&](const BinomialPower& b) { return b.bottom == bottom; });
    if (same != f.binomials.end()) {
      ++same->exponent;
    } else {
      f.binomials.push_back({top, bottom, 1});
    }
  }
  sign.coeff_n = mod2(sign.coeff_n);
  sign.constant = mod2(sign.constant);
  for (auto& c : sign.coeffs_x) c = mod2(c);

  const bool sign_has_vars = sign.uses_variables();
  if (!sign_has_vars && (sign.coeff_n != 0 || sign.constant != 0)) f.prefactor_signs.push_back({sign});
  f.has_sum = !f.binomials.empty();
  if (sign_has_vars) f.signs.push_back({sign});
  return f;
}

}  // namespace egp
