#include "egp/heppbound/hepp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "egp/common/error.hpp"
#include "egp/common/parallel.hpp"
#include "egp/graphcore/catalog.hpp"

namespace egp {
namespace {

constexpr int max_edges = 14;

/// h1 of every edge subset, indexed by mask.
std::vector<int> all_loop_numbers(const Multigraph& g, unsigned workers) {
  const std::size_t total = std::size_t{1} << g.edge_count();
  std::vector<int> h(total);
  const std::size_t chunks = std::min<std::size_t>(total, 64);
  parallel_for(chunks, workers, [&](std::size_t c) {
    for (std::size_t m = total * c / chunks; m < total * (c + 1) / chunks; ++m) {
      h[m] = loop_number(g, static_cast<EdgeMask>(m));
    }
  });
  return h;
}

bool bridgeless_from_table(EdgeMask m, const std::vector<int>& h) {
  for (EdgeMask rest = m; rest != 0; rest &= rest - 1) {
    const EdgeMask without = m & ~(rest & -rest);
    if (h[without] == h[m]) return false;
  }
  return true;
}

}  // namespace

int loop_number(const Multigraph& g, EdgeMask edges) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int cycles = 0;
  for (EdgeMask rest = edges; rest != 0; rest &= rest - 1) {
    const Edge& e = g.edge(__builtin_ctz(rest));
    const int a = find(e.tail);
    const int b = find(e.head);
    if (a == b) {
      ++cycles;
    } else {
      parent[static_cast<std::size_t>(a)] = b;
    }
  }
  return cycles;
}

bool is_bridgeless(const Multigraph& g, EdgeMask edges) {
  const int h = loop_number(g, edges);
  for (EdgeMask rest = edges; rest != 0; rest &= rest - 1) {
    if (loop_number(g, edges & ~(rest & -rest)) == h) return false;
  }
  return true;
}

BridgelessLattice bridgeless_lattice(const Multigraph& g, unsigned workers) {
  if (g.edge_count() > max_edges) {
    throw BudgetExceeded("bridgeless lattices are limited to " + std::to_string(max_edges) + " edges");
  }
  if (g.edge_count() == 0) throw PreconditionError("graph has no edges");
  const auto h = all_loop_numbers(g, workers);
  const EdgeMask full = (EdgeMask{1} << g.edge_count()) - 1;
  if (!bridgeless_from_table(full, h)) throw PreconditionError("graph has a bridge");

  BridgelessLattice out;
  out.edge_count = g.edge_count();
  const int top = h[full];
  out.strata.assign(static_cast<std::size_t>(top) + 1, {});
  for (EdgeMask m = 0; m <= full; ++m) {
    if (bridgeless_from_table(m, h)) out.strata[static_cast<std::size_t>(h[m])].push_back(m);
  }
  out.below.assign(out.strata.size(), {});
  for (std::size_t i = 1; i < out.strata.size(); ++i) {
    const auto& lower = out.strata[i - 1];
    auto& links = out.below[i];
    links.resize(out.strata[i].size());
    parallel_for(out.strata[i].size(), workers, [&](std::size_t j) {
      const EdgeMask m = out.strata[i][j];
      for (std::size_t k = 0; k < lower.size(); ++k) {
        if ((lower[k] & ~m) == 0) links[j].push_back(static_cast<int>(k));
      }
    });
  }
  return out;
}

mpq_class hepp_bound(const Multigraph& g, unsigned workers) {
  const BridgelessLattice lat = bridgeless_lattice(g, workers);
  const std::size_t top = lat.strata.size() - 1;
  // weight[j] over stratum i: sum over chains ending at strata[i][j] of prod(size steps) / prod(omega).
  std::vector<mpq_class> weight{mpq_class(1)};
  for (std::size_t i = 1; i <= top; ++i) {
    const auto& layer = lat.strata[i];
    std::vector<mpq_class> next(layer.size());
    for (std::size_t j = 0; j < layer.size(); ++j) {
      const int size = __builtin_popcount(layer[j]);
      mpq_class sum = 0;
      for (int k : lat.below[i][j]) {
        sum += weight[static_cast<std::size_t>(k)] * (size - __builtin_popcount(lat.strata[i - 1][static_cast<std::size_t>(k)]));
      }
      if (i < top && sum != 0) {
        const int omega = size - 2 * static_cast<int>(i);
        if (omega <= 0) throw PreconditionError("not primitive: a bridgeless subgraph has weight " + std::to_string(omega));
        sum /= omega;
      }
      next[j] = sum;
    }
    weight = std::move(next);
  }
  return weight.front();
}

std::map<mpq_class, std::uint64_t> hepp_chain_histogram(const Multigraph& g, std::uint64_t max_chains) {
  const BridgelessLattice lat = bridgeless_lattice(g);
  const std::size_t top = lat.strata.size() - 1;
  std::map<mpq_class, std::uint64_t> out;
  std::uint64_t chains = 0;
  // Walk down from the top element; `value` accumulates the chain contribution.
  std::function<void(std::size_t, std::size_t, const mpq_class&)> walk = [&](std::size_t i, std::size_t j,
                                                                             const mpq_class& value) {
    if (i == 0) {
      if (++chains > max_chains) throw BudgetExceeded("too many maximal chains to enumerate");
      ++out[value];
      return;
    }
    const int size = __builtin_popcount(lat.strata[i][j]);
    mpq_class here = value;
    if (i < top) here /= size - 2 * static_cast<int>(i);
    for (int k : lat.below[i][j]) {
      const int step = size - __builtin_popcount(lat.strata[i - 1][static_cast<std::size_t>(k)]);
      walk(i - 1, static_cast<std::size_t>(k), here * step);
    }
  };
  walk(top, 0, mpq_class(1));
  return out;
}

std::string format_rational(const mpq_class& q) {
  mpq_class r = q;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::vector<HeppRegressionRow> hepp_zigzag_regression(unsigned workers) {
  const std::vector<std::pair<int, long>> known = {{5, 84}, {6, 572}, {7, 3703}, {8, 26220}};
  std::vector<HeppRegressionRow> out;
  for (auto [m, value] : known) {
    HeppRegressionRow row;
    row.m = m;
    row.expected = value;
    row.computed = hepp_bound(zigzag(m), workers);
    row.match = row.computed == row.expected;
    out.push_back(row);
  }
  return out;
}

}  // namespace egp
