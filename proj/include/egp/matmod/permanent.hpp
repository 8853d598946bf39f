#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>

#include "egp/matmod/matrix.hpp"

namespace egp {

/// Exact permanent by row expansion. Square, dimension <= 12.
mpz_class permanent_naive(const IntMatrix& m);
std::uint64_t permanent_naive_mod(const IntMatrix& m, std::uint64_t modulus);

/// Ryser's formula with Gray-code subset order. Square, dimension <= 30.
std::uint64_t permanent_ryser_mod(const IntMatrix& m, std::uint64_t modulus);

/// 1_{a x b} (Kronecker) base, with a = row_multiplicity and b = column_multiplicity.
struct BlockSpec {
  IntMatrix base;
  std::int64_t row_multiplicity = 1;
  std::int64_t column_multiplicity = 1;

  std::int64_t expanded_rows() const { return base.rows() * row_multiplicity; }
  std::int64_t expanded_cols() const { return base.cols() * column_multiplicity; }
};

struct BlockPermanent {
  std::uint64_t residue = 0;
  /// Set when the modulus was composite and the value came from the vanishing rule.
  bool composite_modulus = false;
  /// Set when the state budget forced the Ryser fallback.
  bool used_fallback = false;
};

struct BlockOptions {
  /// Largest number of live DP states before falling back.
  std::size_t max_states = 20'000'000;
  /// Expanded dimension up to which Ryser is an acceptable fallback.
  int ryser_fallback_limit = 26;
};

/// Perm(1_{a x b} (x) M) mod p by summing over multiplicity matrices K with row sums a and
/// column sums b: (a!)^r (b!)^c sum_K prod m_ij^K_ij / K_ij!. The sum runs as a DP over base rows
/// keyed by the remaining capacity of open columns; a column closes after its last nonzero row.
///
/// Needs a < p and b < p when p is prime. For composite p = a + 1 with at least two base rows
/// the result is 0 and `composite_modulus` is set; a single base row is evaluated literally.
BlockPermanent permanent_block(const BlockSpec& spec, std::uint64_t p, const BlockOptions& options = {});

}  // namespace egp
