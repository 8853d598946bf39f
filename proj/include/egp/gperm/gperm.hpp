#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egp/graphcore/multigraph.hpp"
#include "egp/matmod/matrix.hpp"
#include "egp/matmod/permanent.hpp"

namespace egp {

/// Signed incidence matrix (+1 at the head, -1 at the tail, loops give a zero column)
/// with the row of `special` removed. Rows follow the remaining vertices in increasing order.
IntMatrix reduced_incidence(const Multigraph& g, VertexId special);

/// Highest-index vertex.
VertexId default_special_vertex(const Multigraph& g);

/// A reduced matrix with its fundamental multiplicities.
struct MatrixSource {
  std::string name;
  IntMatrix matrix;
  FundamentalSpec spec;

  static MatrixSource from_graph(std::string name, const Multigraph& g, std::optional<VertexId> special = {});
  static MatrixSource from_matrix(std::string name, IntMatrix m);
};

enum class Engine { automatic, naive, ryser, block };

const char* to_string(Engine e) noexcept;
Engine parse_engine(const std::string& text);

struct EngineOptions {
  Engine engine = Engine::automatic;
  /// Automatic dispatch: naive up to this expanded dimension, then Ryser, then block.
  int naive_limit = 8;
  int ryser_limit = 26;
  BlockOptions block;
  /// Primes evaluated concurrently by gperm_sequence.
  unsigned workers = 1;
};

struct GPermValue {
  std::uint64_t prime = 0;
  std::uint64_t residue = 0;
  SignClass sign_class = SignClass::fixed;
  /// The modulus was composite; see permanent_block.
  bool composite_modulus = false;
};

/// Perm(1_{nv x ne} (x) M) mod p for p = v n + 1. A composite modulus of that form is accepted
/// and flagged; any other modulus throws IneligiblePrime.
GPermValue gperm_at_prime(const MatrixSource& src, std::uint64_t p, const EngineOptions& options = {});

struct SequenceEntry {
  std::uint64_t prime = 0;
  std::uint64_t residue = 0;
  SignClass sign_class = SignClass::fixed;
  friend bool operator==(const SequenceEntry&, const SequenceEntry&) = default;
};

/// Residues at consecutive eligible primes, ascending.
struct PermSequence {
  std::string name;
  std::vector<SequenceEntry> entries;

  const SequenceEntry* find(std::uint64_t p) const;
  std::vector<std::uint64_t> primes() const;
};

PermSequence gperm_sequence(const MatrixSource& src, std::uint64_t max_prime, const EngineOptions& options = {});
PermSequence gperm_sequence_at(const MatrixSource& src, const std::vector<std::uint64_t>& primes,
                               const EngineOptions& options = {});

/// Fixed entries must agree exactly; flippable entries may differ by one global sign epsilon.
struct MatchReport {
  bool match = false;
  /// +1 or -1; +1 when no flippable entry decides it.
  int epsilon = 1;
  std::vector<std::uint64_t> mismatched_primes;
  std::string reason;
};

/// Requires identical prime lists and sign classes; otherwise the report fails with a reason.
MatchReport sequences_match(const PermSequence& a, const PermSequence& b);

/// Entrywise product; an entry is flippable when either factor is.
PermSequence sequence_product(const PermSequence& a, const PermSequence& b, std::string name);
/// Entrywise negation.
PermSequence sequence_negated(const PermSequence& a, std::string name);
/// Entries whose prime is in `primes`.
PermSequence sequence_restricted(const PermSequence& a, const std::vector<std::uint64_t>& primes);

std::string sequence_to_csv(const PermSequence& s);
std::string sequence_to_json(const PermSequence& s);

/// Independent oracle: signed count of taggings of the duplicated graph G^[ne], where every
/// non-special vertex receives exactly p-1 tags and a tag at a tail contributes -1, times
/// ((p-1)!)^(|V|-1). Guarded by the duplicated edge count.
std::uint64_t tagging_oracle(const Multigraph& g, std::uint64_t p, std::optional<VertexId> special = {},
                             int max_edges = 14);

}  // namespace egp
