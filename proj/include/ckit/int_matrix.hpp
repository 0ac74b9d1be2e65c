#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ckit/cardinal.hpp"

namespace ckit {

using IntVector = std::vector<Integer>;

/// Dense arbitrary-precision integer matrix, row-major.
///
/// Zero-sized shapes (0 x n, n x 0) are legal and behave like the empty maps
/// they represent.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Throws ShapeError naming the first ragged row.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0);
  /// Columns of length `rows` each.
  static IntMatrix from_columns(std::span<const IntVector> columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  /// Rows [r0, r0 + nr), columns [c0, c0 + nc).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// Subset of rows / columns in the given order.
  IntMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  IntVector apply(std::span<const Integer> v) const;

  // elementary unimodular operations
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);

  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);
IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::string to_string(std::span<const Integer> v);

}  // namespace ckit
