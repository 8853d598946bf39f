#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egp/graphcore/multigraph.hpp"

namespace egp {

/// Edge subsets are bitmasks over edge ids.
using EdgeMask = std::uint32_t;

/// Bridgeless edge subsets stratified by loop number. A subset carries only the vertices it
/// touches, so it may be disconnected.
struct BridgelessLattice {
  int edge_count = 0;
  /// strata[i]: bridgeless subsets with h1 = i, ascending. strata[0] = {0}; the top stratum is {all edges}.
  std::vector<std::vector<EdgeMask>> strata;
  /// below[i][j]: indices into strata[i - 1] of the subsets of strata[i][j].
  std::vector<std::vector<std::vector<int>>> below;
};

/// Number of bridgeless subgraphs at each loop number; throws for |E| > 14 or when G has a bridge.
BridgelessLattice bridgeless_lattice(const Multigraph& g, unsigned workers = 1);

/// First Betti number of the subgraph formed by `edges`.
int loop_number(const Multigraph& g, EdgeMask edges);
bool is_bridgeless(const Multigraph& g, EdgeMask edges);

/// Sum over maximal bridgeless chains of prod (|E(g_k)| - |E(g_k-1)|) / prod_{k<h1} (|E(g_k)| - 2 h1(g_k)).
/// Throws PreconditionError("not primitive") when an intermediate subgraph has weight <= 0.
mpq_class hepp_bound(const Multigraph& g, unsigned workers = 1);

/// Number of maximal chains per chain contribution, by explicit enumeration (small graphs only).
std::map<mpq_class, std::uint64_t> hepp_chain_histogram(const Multigraph& g, std::uint64_t max_chains = 1'000'000);

/// "num/den", or just the numerator for integers.
std::string format_rational(const mpq_class& q);

struct HeppRegressionRow {
  int m = 0;
  mpq_class computed;
  mpq_class expected;
  bool match = false;
};

/// Decompleted zig-zag graphs zigzag(5..8) against the known values 84, 572, 3703, 26220.
std::vector<HeppRegressionRow> hepp_zigzag_regression(unsigned workers = 1);

}  // namespace egp
