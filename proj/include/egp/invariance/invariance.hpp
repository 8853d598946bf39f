#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "egp/gperm/gperm.hpp"
#include "egp/graphcore/embedding.hpp"
#include "egp/graphcore/multigraph.hpp"

namespace egp {

struct PrimeCheck {
  std::uint64_t prime = 0;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  SignClass sign_class = SignClass::fixed;
  bool pass = false;
};

/// One lhs/rhs sequence comparison inside a report.
struct Comparison {
  std::string label;
  /// Global sign applied to rhs at flippable primes; +1 when nothing decides it.
  int epsilon = 1;
  std::vector<PrimeCheck> checks;
  bool pass = false;
  std::string reason;
};

struct VerificationReport {
  std::string theorem;
  std::vector<std::string> inputs;
  std::vector<Comparison> comparisons;
  /// False when the theorem's hypotheses fail; comparisons are still recorded.
  bool applicable = true;
  /// Conjectural checks: a failure is logged, not fatal.
  bool experimental = false;
  std::string note;
  bool pass = false;
};

std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

struct InvarianceOptions {
  EngineOptions engine;
  /// Also evaluate each graph through its generated closed form and throw on disagreement.
  bool cross_check = false;
};

/// GPerm sequence of g at the given primes (special vertex: highest index).
PermSequence graph_sequence(const Multigraph& g, const std::string& name, const std::vector<std::uint64_t>& primes,
                            const InvarianceOptions& options = {});

/// Compares two sequences with sequences_match semantics: fixed entries exactly, flippable
/// entries up to one global sign. Prime lists and sign classes must agree.
Comparison compare_sequences(const std::string& label, const PermSequence& lhs, const PermSequence& rhs);

/// Entrywise comparison where an entry may absorb the global sign when `flippable[i]`.
Comparison compare_residues(const std::string& label, const std::vector<std::uint64_t>& primes,
                            const std::vector<std::uint64_t>& lhs, const std::vector<std::uint64_t>& rhs,
                            const std::vector<bool>& flippable);

/// Report with one comparison, for sequences computed elsewhere (for instance from formulas).
VerificationReport sequence_pair_report(const std::string& theorem, const std::vector<std::string>& inputs,
                                        const PermSequence& lhs, const PermSequence& rhs);

/// All decompletions of a connected 4-regular graph agree; decompletion 0 is compared with every other.
VerificationReport check_decompletion(const Multigraph& completed, std::uint64_t max_prime,
                                      const InvarianceOptions& options = {});

struct TwistData {
  std::array<VertexId, 4> cut{};
  std::vector<VertexId> side;
};

/// Requires schnetz_twist(g1, data) to be isomorphic to g2 (else PreconditionError), then
/// compares a decompletion of each.
VerificationReport check_twist(const Multigraph& g1, const Multigraph& g2, const TwistData& data,
                               std::uint64_t max_prime, const InvarianceOptions& options = {});

/// Planar duality. When |E| = 2(|V|-1) the sequences must match; otherwise at every common
/// prime GPerm(G) = (-1)^(|E|-|V|+1) (n e_G)!^|E| GPerm(G*).
VerificationReport check_dual(const Multigraph& g, const Multigraph& dual, std::uint64_t max_prime,
                              const InvarianceOptions& options = {});
/// Dual computed from a planar embedding found by search.
VerificationReport check_dual(const Multigraph& g, std::uint64_t max_prime, const InvarianceOptions& options = {});

/// Two-vertex cut product: GPerm(glued) = -GPerm(G1) GPerm(G2) at each common prime, up to the
/// sign class. Marked inapplicable unless all three graphs have |E| = 2|V| - 2.
VerificationReport check_two_cut(const Multigraph& g1, EdgeId e1, const Multigraph& g2, EdgeId e2, bool flip,
                                 std::uint64_t max_prime, const InvarianceOptions& options = {});
/// Same comparison on precomputed sequences (common primes only).
VerificationReport two_cut_report(const PermSequence& glued, const PermSequence& first, const PermSequence& second,
                                  bool applicable);

/// Four-edge cut product on a completed 4-regular graph: GPerm(G) = GPerm(G1) GPerm(G2), where
/// G, G1, G2 decomplete the graph and its two minors. `side` lists one shore of the cut.
VerificationReport check_four_cut(const Multigraph& completed, const std::vector<VertexId>& side,
                                  std::uint64_t max_prime, const InvarianceOptions& options = {});

/// Experimental: the two glues of g1, g2 along e1, e2 (with and without flip) agree.
VerificationReport check_whitney_flip(const Multigraph& g1, EdgeId e1, const Multigraph& g2, EdgeId e2,
                                      std::uint64_t max_prime, const InvarianceOptions& options = {});

enum class WitnessKind { pendant, parallel, separation, involution };
const char* to_string(WitnessKind kind) noexcept;

struct VanishingWitness {
  WitnessKind kind = WitnessKind::pendant;
  /// Pendant vertex, the pair of a parallel class, the non-special vertex set, or the fixed vertex.
  std::vector<VertexId> vertices;
  VertexId special = 0;
  /// Involution as a vertex map.
  std::vector<VertexId> involution;
  /// True when zeros are only implied at primes where n e is odd.
  bool odd_multiplicity_only = false;
  std::string description;
};

struct WitnessSearch {
  std::optional<VanishingWitness> witness;
  /// Separation or involution search was skipped because the graph is too large.
  bool separation_searched = true;
  bool involution_searched = true;
};

/// First witness among pendant vertex, parallel class, separation (|V| <= 12) and involution
/// with a fixed vertex and an odd number of crossing edges (|V| <= 10).
WitnessSearch find_vanishing_witness(const Multigraph& g);
std::optional<VanishingWitness> vanishing_witness(const Multigraph& g);

struct OrientationCertificate {
  /// Permanent of the fundamental (p-1)-matrix of H is nonzero mod p.
  bool certificate = false;
  /// Brute-force answer when |E(G)| <= 10.
  std::optional<bool> orientation_exists;
  /// Reversal flag per edge of G for a found orientation.
  std::optional<std::vector<bool>> orientation;
};

/// H must be a spanning sub-multigraph of G (same vertex set) with (p-1)(|V|-1) edges.
OrientationCertificate orientation_certificate(const Multigraph& g, const Multigraph& h, std::uint64_t p);

/// Orientation of g (per-edge reversal flags) where in-degree = out-degree mod p everywhere.
std::optional<std::vector<bool>> find_mod_p_orientation(const Multigraph& g, std::uint64_t p, int max_edges = 20);

/// Runs independent checks concurrently; reports are ordered by theorem id, then by input order.
std::vector<VerificationReport> run_verification_suite(const std::vector<std::function<VerificationReport()>>& checks,
                                                       unsigned workers = 1);

}  // namespace egp
