#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egp/graphcore/multigraph.hpp"
#include "egp/matmod/matrix.hpp"
#include "egp/matmod/polynomial.hpp"

namespace egp {

/// Point-count loops are capped by the number of points, not by time.
struct CountOptions {
  std::uint64_t point_budget = 100'000'000;
  unsigned workers = 1;
};

/// Spanning trees as sorted edge-id lists. Requires |E| <= 64.
std::vector<std::vector<EdgeId>> spanning_trees(const Multigraph& g);

/// Kirchhoff polynomial data for one graph. Variable e is the weight of edge e.
class KirchhoffContext {
 public:
  explicit KirchhoffContext(Multigraph g);

  const Multigraph& graph() const noexcept { return graph_; }
  const std::vector<std::vector<EdgeId>>& trees() const noexcept { return trees_; }

  /// K_G with diagonal entries `weights`: [[diag(x), E^T], [-E, 0]], E the incidence matrix
  /// without the row of the last vertex.
  ResidueMatrix modified_laplacian(const std::vector<std::uint64_t>& weights, const Modulus& field) const;
  IntMatrix modified_laplacian(const std::vector<std::int64_t>& weights) const;

  /// Sum over spanning trees T of the product of x_e over edges outside T.
  std::uint64_t tree_sum(const std::vector<std::uint64_t>& x, const Modulus& field) const;
  std::uint64_t laplacian_det(const std::vector<std::uint64_t>& x, const Modulus& field) const;

  Polynomial polynomial() const;

 private:
  Multigraph graph_;
  std::vector<std::vector<EdgeId>> trees_;
  std::vector<std::uint64_t> complement_masks_;
  IntMatrix incidence_;
};

enum class PsiEvaluator { tree_sum, laplacian_det };
const char* to_string(PsiEvaluator e) noexcept;

/// Number of x in F_p^|E| with Psi_G(x) = 0. Requires |V| >= 3 and p^|E| within budget.
mpz_class kirchhoff_point_count(const Multigraph& g, std::uint64_t p, PsiEvaluator evaluator = PsiEvaluator::laplacian_det,
                                const CountOptions& options = {});

enum class C2Method { point_count, dodgson };
const char* to_string(C2Method m) noexcept;

struct C2Entry {
  std::uint64_t prime = 0;
  /// [Psi]_p; absent when the Dodgson route was used.
  std::optional<mpz_class> point_count;
  std::uint64_t c2 = 0;
  C2Method method = C2Method::point_count;
};

struct C2Options {
  CountOptions count;
  /// Switch to the Dodgson product when p^|E| exceeds the budget.
  bool dodgson_fallback = true;
};

/// c2 = [Psi]_p / p^2 mod p. Throws Error if p^2 does not divide the count.
C2Entry c2_at_prime(const Multigraph& g, std::uint64_t p, const C2Options& options = {});
/// c2 at every prime up to max_prime.
std::vector<C2Entry> c2_sequence(const Multigraph& g, std::uint64_t max_prime, const C2Options& options = {});
std::string c2_to_csv(const std::vector<C2Entry>& entries);

/// Dodgson polynomial Psi^{I,J}_K: det of K_G with rows I and columns J removed and x_K = 0.
/// Obtained by interpolating exact determinants on {0,1}^|E|; defined up to an overall sign.
/// Requires |I| = |J| and |E| <= 16.
Polynomial dodgson_polynomial(const Multigraph& g, const std::vector<EdgeId>& rows, const std::vector<EdgeId>& cols,
                              const std::vector<EdgeId>& zeroed = {});
/// Unsigned tree form: edge sets F that are spanning trees of both (G\I)/((J\I) u K) and
/// (G\J)/((I\J) u K), each contributing the product of x_e over e outside F, I, J and K.
Polynomial dodgson_tree_polynomial(const Multigraph& g, const std::vector<EdgeId>& rows,
                                   const std::vector<EdgeId>& cols, const std::vector<EdgeId>& zeroed = {});

struct DodgsonTriple {
  EdgeId a = 0;
  EdgeId b = 0;
  EdgeId c = 0;
};

/// -[Psi^{ac,bc} Psi^{a,b}_c]_p mod p, counted over F_p^(E \ {a,b,c}).
/// A triple making either polynomial vanish identically throws PreconditionError.
std::uint64_t dodgson_c2(const Multigraph& g, std::uint64_t p, const DodgsonTriple& t, const CountOptions& options = {});
/// First triple (by c, then a < b) for which both Dodgson polynomials are nonzero.
std::optional<DodgsonTriple> default_dodgson_triple(const Multigraph& g);

struct FlowCount {
  mpz_class count;
  /// False when p^|E| exceeded the budget and p^h1 was returned instead.
  bool brute_force = true;
};

/// Number of F_p flows (conservation at every vertex for the edge orientation). Requires a connected graph.
FlowCount count_flows(const Multigraph& g, std::uint64_t p, const CountOptions& options = {});

/// Number of x in F_p^|E| for which e -> x_e flow_e is a tension. Throws on an invalid flow.
mpz_class schwinger_solution_count(const Multigraph& g, std::uint64_t p, const std::vector<std::uint64_t>& flow,
                                   const CountOptions& options = {});
/// k = fewest edges of a connected spanning subgraph containing every zero-flow edge.
int schwinger_exponent(const Multigraph& g, const std::vector<std::uint64_t>& flow);

}  // namespace egp
