#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egp/matmod/modular.hpp"

namespace egp {

/// Dense row-major matrix with value semantics.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T{}) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(init.begin()->size());
    for (const auto& row : init) data_.insert(data_.end(), row.begin(), row.end());
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using ResidueMatrix = Matrix<std::uint64_t>;

/// 1_{a x b} (Kronecker) M: block (r, c) is a copy of M, so entry (r*rows + i, c*cols + j) = M(i, j).
IntMatrix kron_ones(const IntMatrix& m, int a, int b);

ResidueMatrix reduce(const IntMatrix& m, const Modulus& field);

/// Gaussian elimination modulo a prime.
std::uint64_t determinant_mod(ResidueMatrix m, const Modulus& field);
/// Fraction-free elimination over Z.
mpz_class determinant_exact(const IntMatrix& m);

/// Integer row operations that keep a matrix in the same unimodular row class.
void add_row_multiple(IntMatrix& m, int target, int source, std::int64_t factor);
void negate_row(IntMatrix& m, int row);

/// Unimodular row reduction to [I | A] after permuting columns. The permutation lists,
/// for every output column, its source column. Fails when a pivot other than +-1 is needed.
struct IdentityPrefixForm {
  IntMatrix reduced;
  std::vector<int> column_order;
};
std::optional<IdentityPrefixForm> reduce_to_identity_prefix(const IntMatrix& m);

/// Format "M <rows> <cols>" followed by one line per row. '#' starts a comment.
IntMatrix parse_matrix(std::string_view text);
std::string format_matrix(const IntMatrix& m);

}  // namespace egp
