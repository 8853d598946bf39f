#include "egp/closedform/families.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "egp/common/error.hpp"

namespace egp {

namespace detail {
struct EmbeddedText {
  std::string_view name;
  std::string_view content;
};
/// Generated at build time from data/formulas.
const std::vector<EmbeddedText>& bundled_formula_files();
}  // namespace detail

namespace {

std::optional<int> single_argument(std::string_view text, std::string_view fn) {
  if (text.size() < fn.size() + 3 || text.substr(0, fn.size()) != fn || text[fn.size()] != '(' ||
      text.back() != ')') {
    return std::nullopt;
  }
  const std::string_view inner = text.substr(fn.size() + 1, text.size() - fn.size() - 2);
  int value = 0;
  auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), value);
  if (ec != std::errc() || ptr != inner.data() + inner.size()) return std::nullopt;
  return value;
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

ClosedForm tree_formula(int vertices) {
  if (vertices < 2) throw PreconditionError("a tree formula needs at least two vertices");
  return parse_formula("PRIME 1n+1; SGN(" + std::to_string(vertices - 1) + ")");
}

ClosedForm wheel_formula(int spokes) {
  if (spokes < 3) throw PreconditionError("a wheel needs at least three spokes");
  const int w = spokes;
  const int c = (w + (w % 2 == 0 ? 1 : -1)) / 2;
  return parse_formula("PRIME 2n+1; FACT(2*n)^" + std::to_string(w) + " * SGN(" + std::to_string(c) +
                       "*n) * SUM{k}: C(n,k)^" + std::to_string(w) + " * SGN(" + std::to_string(w) + "*k)");
}

ClosedForm zigzag_formula(int m) {
  if (m < 5) throw PreconditionError("zig-zag formulas need m >= 5");
  // The decompleted graph has v = m - 1 vertices; parts k_1..k_{v-1} of n, the last one implied.
  const int v = m - 1;
  const int free = v - 2;
  auto k = [](int i) { return "k" + std::to_string(i); };
  std::string vars;
  std::string rest = "n";
  for (int i = 1; i <= free; ++i) {
    vars += (i > 1 ? ", " : "") + k(i);
    rest += "-" + k(i);
  }
  std::string body;
  for (int i = 1; i <= free; ++i) body += "C(n," + k(i) + ") * ";
  body += "C(n," + rest + ")";
  std::string prefix;
  for (int i = 1; i <= v - 3; ++i) {
    prefix += (i > 1 ? "+" : "") + k(i);
    body += " * C(n-" + k(i + 1) + "," + prefix + ")";
  }
  return parse_formula("PRIME 2n+1; FACT(2*n)^" + std::to_string(v - 1) + " * SUM{" + vars + "}: " + body);
}

ClosedForm k34_formula() {
  return parse_formula("PRIME 2n+1; FACT(2*n)^6 * SUM{k1, k2, k3}: C(n,k1)^2 * C(n,k2)^2 * C(n,k3)^2 * "
                       "C(n,2*n-k1-k2-k3)^2");
}

ClosedForm r10_formula() {
  // Parts k1+k2+k3 = n, j1+j2 = n-k2, l1+l2 = n-k1, p1+p2 = n-k3 with the dependent parts eliminated.
  return parse_formula(
      "PRIME 2n+1; FACT(2*n)^5 * SUM{k1, k2, j1, l1, p1}: C(n,k1) * C(n-k1,k2) * C(n,j1) * C(n,n-k2-j1) * "
      "C(k2+j1,l1) * C(n,n-k1-l1) * C(n-j1,p1) * C(n,k1+k2-p1) * C(n-k2+l1+p1,n-k2-j1+l1) * SGN(k1+k2+j1)");
}

ClosedForm p31sq_formula() {
  return parse_formula("PRIME 2n+1; FACT(2*n)^5 * SUM{x, y}: C(n,x)^3 * C(n,y)^3 * SGN(x+y)");
}

ClosedForm didntwork_g_formula() {
  return parse_formula("PRIME 8n+1 COLS 5n; SGN(1) * SUM{}: C(5*n,n)^2 * C(5*n,2*n)^2");
}

ClosedForm didntwork_g1_formula() { return parse_formula("PRIME 5n+1 COLS 3n; SGN(1) * SUM{}: C(3*n,n)^2"); }

ClosedForm family_formula(std::string_view name) {
  if (auto v = single_argument(name, "tree")) return tree_formula(*v);
  if (auto w = single_argument(name, "wheel")) return wheel_formula(*w);
  if (auto m = single_argument(name, "zigzag")) return zigzag_formula(*m);
  if (name == "k34") return k34_formula();
  if (name == "r10") return r10_formula();
  if (name == "p31sq") return p31sq_formula();
  if (name == "didntwork_G") return didntwork_g_formula();
  if (name == "didntwork_G1") return didntwork_g1_formula();
  throw PreconditionError("unknown formula family '" + std::string(name) + "'");
}

std::vector<std::string> family_names() {
  return {"tree(v)", "wheel(w)", "zigzag(m)", "k34", "r10", "p31sq", "didntwork_G", "didntwork_G1"};
}

IntMatrix r10_matrix() {
  const std::vector<std::vector<std::int64_t>> rows = {
      {1, 0, 0, 0, 0, -1, 1, 0, 0, 1},  {0, 1, 0, 0, 0, 1, -1, 1, 0, 0}, {0, 0, 1, 0, 0, 0, 1, -1, 1, 0},
      {0, 0, 0, 1, 0, 0, 0, 1, -1, 1}, {0, 0, 0, 0, 1, 1, 0, 0, 1, -1}};
  IntMatrix m(5, 10, 0);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 10; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

std::vector<std::string> appendix_names() {
  std::vector<std::string> out;
  for (const auto& f : detail::bundled_formula_files()) out.emplace_back(f.name);
  // Natural order: P7_2 before P7_10.
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    auto key = [](const std::string& s) {
      const auto us = s.find('_');
      return std::pair{std::stoi(s.substr(1, us - 1)), std::stoi(s.substr(us + 1))};
    };
    return key(a) < key(b);
  });
  return out;
}

std::string appendix_text(std::string_view name) {
  for (const auto& f : detail::bundled_formula_files()) {
    if (f.name == name) return trimmed(f.content);
  }
  throw PreconditionError("no bundled formula for '" + std::string(name) + "'");
}

ClosedForm appendix_catalog(std::string_view name) { return parse_formula(appendix_text(name)); }

}  // namespace egp
