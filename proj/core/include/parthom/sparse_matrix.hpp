#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace parthom {

/// Integer matrix in compressed sparse column form. Row indices inside a
/// column are strictly increasing and no stored value is zero.
class SparseIntMatrix {
 public:
  using Index = std::uint32_t;
  using Value = std::int64_t;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols);

  /// Each column is a list of (row, value) pairs in any order; duplicates are
  /// summed and zeros dropped.
  static SparseIntMatrix from_columns(std::size_t rows,
                                      std::vector<std::vector<std::pair<Index, Value>>> columns);
  static SparseIntMatrix from_dense(const std::vector<std::vector<Value>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return col_start_.size() - 1; }
  std::size_t nonzeros() const { return row_index_.size(); }

  std::span<const Index> column_rows(std::size_t j) const {
    return {row_index_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }
  std::span<const Value> column_values(std::size_t j) const {
    return {values_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }

  Value at(std::size_t row, std::size_t col) const;
  bool is_zero() const { return row_index_.empty(); }

  SparseIntMatrix transpose() const;
  /// Rows and columns are taken in the order given.
  SparseIntMatrix submatrix(std::span<const Index> rows, std::span<const Index> cols) const;
  /// this * rhs with 64-bit accumulation; throws std::overflow_error on overflow.
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  std::vector<std::vector<Value>> to_dense() const;

  bool operator==(const SparseIntMatrix&) const = default;

  /// Appends columns one at a time.
  class Builder {
   public:
    Builder(std::size_t rows, std::size_t expected_nonzeros = 0);
    void push(Index row, Value value) { pending_.emplace_back(row, value); }
    void finish_column();
    SparseIntMatrix build() &&;

   private:
    std::size_t rows_;
    std::vector<std::pair<Index, Value>> pending_;
    std::vector<std::size_t> col_start_{0};
    std::vector<Index> row_index_;
    std::vector<Value> values_;
  };

 private:
  std::size_t rows_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<Index> row_index_;
  std::vector<Value> values_;
};

/// Boundary operators are plain integer matrices.
using SparseBoundaryMatrix = SparseIntMatrix;

}  // namespace parthom
