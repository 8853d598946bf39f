#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egp/closedform/formula.hpp"
#include "egp/common/error.hpp"
#include "egp/gperm/gperm.hpp"

namespace egp {

/// The checksum line of a golden file does not match its body.
class ChecksumError : public Error {
 public:
  using Error::Error;
};

struct GoldenRow {
  std::string name;
  /// "twist P7_7", "dual P7_10" or empty.
  std::string annotation;
  std::vector<std::uint64_t> values;
};

/// Residues of small phi^4 graphs at p = 3..41 with their sign metadata.
struct GoldenTable {
  std::vector<std::uint64_t> primes;
  /// Per prime: the value does not depend on the orientation.
  std::vector<bool> fixed;
  std::vector<GoldenRow> rows;

  const GoldenRow* find(std::string_view name) const;
  PermSequence sequence(const GoldenRow& row) const;
};

/// Row named by the annotation, e.g. "P7_7" for "twist P7_7".
std::optional<std::string> annotated_partner(const GoldenRow& row);

/// 64-bit FNV-1a of `body`, as 16 lowercase hex digits.
std::string golden_checksum(std::string_view body);

/// File layout:
///   # fnv1a64 <checksum of everything after this line>
///   graph,annotation,<primes...>
///   fixed,,<0 or 1 per prime>
///   <name>,<annotation>,<values...>
/// Throws ChecksumError on a checksum mismatch and ParseError on malformed lines.
GoldenTable parse_golden_table(std::string_view text);

/// Text of the bundled table.
std::string_view bundled_golden_text();
const GoldenTable& bundled_golden_table();

struct GoldenRowResult {
  /// Sequence source, e.g. "P7_7".
  std::string source;
  /// Golden row it was compared with.
  std::string row;
  MatchReport match;
};

struct GoldenReport {
  std::vector<GoldenRowResult> results;
  bool pass = false;
};

/// Compares bundled formula sequences with golden rows. An annotated row is also compared with
/// its partner's formula. An empty selection means every row with a bundled formula; a selected
/// row without one throws PreconditionError.
GoldenReport compare_goldens(const GoldenTable& table, const std::vector<std::string>& selection = {},
                             const FormulaEvalOptions& options = {});

std::string golden_report_to_text(const GoldenReport& report);
std::string golden_report_to_json(const GoldenReport& report);

}  // namespace egp
