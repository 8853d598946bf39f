#include "egp/matmod/matrix.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "egp/common/error.hpp"

namespace egp {

IntMatrix kron_ones(const IntMatrix& m, int a, int b) {
  if (a < 1 || b < 1) throw PreconditionError("block multiplicities must be positive");
  IntMatrix out(m.rows() * a, m.cols() * b);
  for (int r = 0; r < a; ++r) {
    for (int c = 0; c < b; ++c) {
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out(r * m.rows() + i, c * m.cols() + j) = m(i, j);
      }
    }
  }
  return out;
}

ResidueMatrix reduce(const IntMatrix& m, const Modulus& field) {
  ResidueMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = field.reduce(m(i, j));
  }
  return out;
}

std::uint64_t determinant_mod(ResidueMatrix m, const Modulus& field) {
  if (!m.square()) throw PreconditionError("determinant of a non-square matrix");
  const int n = m.rows();
  std::uint64_t det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = field.neg(det);
    }
    det = field.mul(det, m(c, c));
    const std::uint64_t inv = field.inv(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const std::uint64_t f = field.mul(m(r, c), inv);
      for (int j = c; j < n; ++j) m(r, j) = field.sub(m(r, j), field.mul(f, m(c, j)));
    }
  }
  return det;
}

mpz_class determinant_exact(const IntMatrix& in) {
  if (!in.square()) throw PreconditionError("determinant of a non-square matrix");
  const int n = in.rows();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<long>(in(i, j));
  }
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

void add_row_multiple(IntMatrix& m, int target, int source, std::int64_t factor) {
  if (target == source) throw PreconditionError("row operation needs distinct rows");
  for (int j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

void negate_row(IntMatrix& m, int row) {
  for (int j = 0; j < m.cols(); ++j) m(row, j) = -m(row, j);
}

std::optional<IdentityPrefixForm> reduce_to_identity_prefix(const IntMatrix& in) {
  IntMatrix m = in;
  const int rows = m.rows();
  std::vector<int> pivots;
  std::vector<bool> used(m.cols(), false);
  for (int r = 0; r < rows; ++r) {
    int pc = -1;
    for (int j = 0; j < m.cols() && pc < 0; ++j) {
      if (!used[j] && std::llabs(m(r, j)) == 1) pc = j;
    }
    if (pc < 0) return std::nullopt;
    if (m(r, pc) == -1) negate_row(m, r);
    for (int s = 0; s < rows; ++s) {
      if (s != r && m(s, pc) != 0) add_row_multiple(m, s, r, -m(s, pc));
    }
    used[pc] = true;
    pivots.push_back(pc);
  }
  IdentityPrefixForm out;
  out.column_order = pivots;
  for (int j = 0; j < m.cols(); ++j) {
    if (!used[j]) out.column_order.push_back(j);
  }
  out.reduced = IntMatrix(rows, m.cols());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < m.cols(); ++j) out.reduced(i, j) = m(i, out.column_order[j]);
  }
  return out;
}

IntMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  int declared_rows = -1;
  int declared_cols = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::pair<std::string_view, int>> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',' && line[j] != '\r') ++j;
      tokens.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
      i = j;
    }
    if (tokens.empty()) continue;
    auto number = [&](const std::pair<std::string_view, int>& t) {
      std::int64_t v = 0;
      const char* end = t.first.data() + t.first.size();
      auto [ptr, ec] = std::from_chars(t.first.data(), end, v);
      if (ec != std::errc() || ptr != end) throw ParseError("expected an integer", line_no, t.second);
      return v;
    };
    if (declared_rows < 0) {
      if (tokens[0].first != "M" || tokens.size() != 3) throw ParseError("expected 'M <rows> <cols>'", line_no, 1);
      declared_rows = static_cast<int>(number(tokens[1]));
      declared_cols = static_cast<int>(number(tokens[2]));
      if (declared_rows < 1 || declared_cols < 1) throw ParseError("matrix dimensions must be positive", line_no, 1);
      continue;
    }
    if (static_cast<int>(tokens.size()) != declared_cols) {
      throw ParseError("row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(declared_cols),
                       line_no, 1);
    }
    std::vector<std::int64_t> row;
    for (const auto& t : tokens) row.push_back(number(t));
    rows.push_back(std::move(row));
  }
  if (declared_rows < 0) throw ParseError("missing 'M <rows> <cols>' header", line_no, 1);
  if (static_cast<int>(rows.size()) != declared_rows) {
    throw ParseError("expected " + std::to_string(declared_rows) + " rows, found " + std::to_string(rows.size()), line_no, 1);
  }
  IntMatrix m(declared_rows, declared_cols);
  for (int i = 0; i < declared_rows; ++i) {
    for (int j = 0; j < declared_cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << "M " << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace egp
