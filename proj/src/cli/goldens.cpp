#include "egp/cli/goldens.hpp"

#include <algorithm>
#include <sstream>

#include "egp/closedform/families.hpp"
#include "json.hpp"

namespace egp {
namespace detail {
struct EmbeddedText {
  std::string_view name;
  std::string_view content;
};
/// Generated at build time from data/goldens.
const std::vector<EmbeddedText>& bundled_golden_files();
}  // namespace detail

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::uint64_t parse_cell(const std::string& cell, int line, int column) {
  if (cell.empty() || !std::all_of(cell.begin(), cell.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("expected a non-negative integer, got '" + cell + "'", line, column);
  }
  return std::stoull(cell);
}

bool has_formula(const std::string& name) {
  const auto names = appendix_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

const GoldenRow* GoldenTable::find(std::string_view name) const {
  for (const auto& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

PermSequence GoldenTable::sequence(const GoldenRow& row) const {
  PermSequence s;
  s.name = row.name;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    s.entries.push_back({primes[i], row.values[i], fixed[i] ? SignClass::fixed : SignClass::flippable});
  }
  return s;
}

std::optional<std::string> annotated_partner(const GoldenRow& row) {
  const auto space = row.annotation.find(' ');
  if (space == std::string::npos) return std::nullopt;
  return row.annotation.substr(space + 1);
}

std::string golden_checksum(std::string_view body) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : body) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

GoldenTable parse_golden_table(std::string_view text) {
  const auto newline = text.find('\n');
  const std::string first(text.substr(0, newline));
  const std::string prefix = "# fnv1a64 ";
  if (newline == std::string_view::npos || first.rfind(prefix, 0) != 0) {
    throw ParseError("expected '# fnv1a64 <checksum>'", 1, 1);
  }
  const std::string_view body = text.substr(newline + 1);
  const std::string expected = first.substr(prefix.size());
  const std::string actual = golden_checksum(body);
  if (expected != actual) throw ChecksumError("golden table checksum mismatch: file says " + expected + ", body has " + actual);

  GoldenTable table;
  std::istringstream in{std::string(body)};
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (table.primes.empty()) {
      if (cells.size() < 3 || cells[0] != "graph" || cells[1] != "annotation") {
        throw ParseError("expected header 'graph,annotation,<primes>'", line_no, 1);
      }
      for (std::size_t i = 2; i < cells.size(); ++i) table.primes.push_back(parse_cell(cells[i], line_no, 0));
      continue;
    }
    if (cells.size() != table.primes.size() + 2) {
      throw ParseError("expected " + std::to_string(table.primes.size() + 2) + " cells", line_no, 1);
    }
    std::vector<std::uint64_t> values;
    for (std::size_t i = 2; i < cells.size(); ++i) values.push_back(parse_cell(cells[i], line_no, 0));
    if (cells[0] == "fixed") {
      for (const auto v : values) table.fixed.push_back(v != 0);
      continue;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] >= table.primes[i]) throw ParseError("value is not reduced mod " + std::to_string(table.primes[i]), line_no, 0);
    }
    table.rows.push_back({cells[0], cells[1], std::move(values)});
  }
  if (table.primes.empty()) throw ParseError("missing header", line_no, 1);
  if (table.fixed.size() != table.primes.size()) throw ParseError("missing 'fixed' row", line_no, 1);
  return table;
}

std::string_view bundled_golden_text() {
  for (const auto& f : detail::bundled_golden_files()) {
    if (f.name == "phi4_small") return f.content;
  }
  throw Error("bundled golden table is missing");
}

const GoldenTable& bundled_golden_table() {
  static const GoldenTable table = parse_golden_table(bundled_golden_text());
  return table;
}

GoldenReport compare_goldens(const GoldenTable& table, const std::vector<std::string>& selection,
                             const FormulaEvalOptions& options) {
  std::vector<const GoldenRow*> rows;
  if (selection.empty()) {
    for (const auto& r : table.rows) {
      if (has_formula(r.name)) rows.push_back(&r);
    }
  } else {
    for (const auto& name : selection) {
      const GoldenRow* r = table.find(name);
      if (r == nullptr) throw PreconditionError("no golden row named '" + name + "'");
      if (!has_formula(r->name)) throw PreconditionError("missing source: no bundled formula for '" + name + "'");
      rows.push_back(r);
    }
  }
  GoldenReport report;
  report.pass = true;
  for (const GoldenRow* r : rows) {
    const PermSequence golden = table.sequence(*r);
    std::vector<std::string> sources{r->name};
    if (const auto partner = annotated_partner(*r); partner && has_formula(*partner)) sources.push_back(*partner);
    for (const auto& source : sources) {
      const PermSequence computed = formula_sequence_at(appendix_catalog(source), source, table.primes, options);
      GoldenRowResult result{source, r->name, sequences_match(computed, golden)};
      report.pass = report.pass && result.match.match;
      report.results.push_back(std::move(result));
    }
  }
  return report;
}

std::string golden_report_to_text(const GoldenReport& report) {
  std::ostringstream out;
  for (const auto& r : report.results) {
    out << r.source << " vs " << r.row << ": " << (r.match.match ? "match" : "MISMATCH") << " (epsilon "
        << r.match.epsilon << ")";
    if (!r.match.reason.empty()) out << " " << r.match.reason;
    out << "\n";
  }
  out << (report.pass ? "all rows match" : "some rows differ") << "\n";
  return out.str();
}

std::string golden_report_to_json(const GoldenReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "v1";
  j["pass"] = report.pass;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    j["results"].push_back({{"source", r.source},
                            {"row", r.row},
                            {"match", r.match.match},
                            {"epsilon", r.match.epsilon},
                            {"mismatched_primes", r.match.mismatched_primes},
                            {"reason", r.match.reason}});
  }
  return j.dump(2) + "\n";
}

}  // namespace egp
