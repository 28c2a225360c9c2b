#include "parthom/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace parthom {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), col_start_(cols + 1, 0) {}

SparseIntMatrix::Builder::Builder(std::size_t rows, std::size_t expected_nonzeros) : rows_(rows) {
  row_index_.reserve(expected_nonzeros);
  values_.reserve(expected_nonzeros);
}

void SparseIntMatrix::Builder::finish_column() {
  std::sort(pending_.begin(), pending_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < pending_.size();) {
    const Index row = pending_[i].first;
    if (row >= rows_) throw std::out_of_range("row index out of range");
    Value sum = 0;
    for (; i < pending_.size() && pending_[i].first == row; ++i) sum += pending_[i].second;
    if (sum != 0) {
      row_index_.push_back(row);
      values_.push_back(sum);
    }
  }
  pending_.clear();
  col_start_.push_back(row_index_.size());
}

SparseIntMatrix SparseIntMatrix::Builder::build() && {
  SparseIntMatrix m;
  m.rows_ = rows_;
  m.col_start_ = std::move(col_start_);
  m.row_index_ = std::move(row_index_);
  m.values_ = std::move(values_);
  return m;
}

SparseIntMatrix SparseIntMatrix::from_columns(
    std::size_t rows, std::vector<std::vector<std::pair<Index, Value>>> columns) {
  Builder b(rows);
  for (auto& col : columns) {
    for (auto [r, v] : col) b.push(r, v);
    b.finish_column();
  }
  return std::move(b).build();
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Value>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows == 0 ? 0 : dense[0].size();
  Builder b(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (dense[i].size() != cols) throw std::invalid_argument("ragged dense matrix");
      if (dense[i][j] != 0) b.push(static_cast<Index>(i), dense[i][j]);
    }
    b.finish_column();
  }
  return std::move(b).build();
}

SparseIntMatrix::Value SparseIntMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols()) throw std::out_of_range("matrix index out of range");
  auto rs = column_rows(col);
  auto it = std::lower_bound(rs.begin(), rs.end(), static_cast<Index>(row));
  if (it == rs.end() || *it != row) return 0;
  return column_values(col)[static_cast<std::size_t>(it - rs.begin())];
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  std::vector<std::size_t> counts(rows_ + 1, 0);
  for (auto r : row_index_) ++counts[r + 1];
  for (std::size_t i = 0; i < rows_; ++i) counts[i + 1] += counts[i];
  SparseIntMatrix t;
  t.rows_ = cols();
  t.col_start_ = counts;
  t.row_index_.resize(nonzeros());
  t.values_.resize(nonzeros());
  auto next = counts;
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      auto pos = next[row_index_[k]]++;
      t.row_index_[pos] = static_cast<Index>(j);
      t.values_[pos] = values_[k];
    }
  }
  return t;
}

SparseIntMatrix SparseIntMatrix::submatrix(std::span<const Index> rows,
                                           std::span<const Index> cols) const {
  std::vector<std::int64_t> row_map(rows_, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw std::out_of_range("submatrix row out of range");
    row_map[rows[i]] = static_cast<std::int64_t>(i);
  }
  Builder b(rows.size());
  for (auto j : cols) {
    if (j >= this->cols()) throw std::out_of_range("submatrix column out of range");
    auto rs = column_rows(j);
    auto vs = column_values(j);
    for (std::size_t k = 0; k < rs.size(); ++k)
      if (row_map[rs[k]] >= 0) b.push(static_cast<Index>(row_map[rs[k]]), vs[k]);
    b.finish_column();
  }
  return std::move(b).build();
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("matrix shapes do not compose");
  Builder b(rows_);
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto rs = rhs.column_rows(j);
    auto vs = rhs.column_values(j);
    for (std::size_t k = 0; k < rs.size(); ++k) {
      auto inner_rows = column_rows(rs[k]);
      auto inner_vals = column_values(rs[k]);
      for (std::size_t t = 0; t < inner_rows.size(); ++t) {
        Value prod;
        if (__builtin_mul_overflow(inner_vals[t], vs[k], &prod))
          throw std::overflow_error("matrix product overflows 64 bits");
        b.push(inner_rows[t], prod);
      }
    }
    b.finish_column();
  }
  return std::move(b).build();
}

std::vector<std::vector<SparseIntMatrix::Value>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<Value>> dense(rows_, std::vector<Value>(cols(), 0));
  for (std::size_t j = 0; j < cols(); ++j) {
    auto rs = column_rows(j);
    auto vs = column_values(j);
    for (std::size_t k = 0; k < rs.size(); ++k) dense[rs[k]][j] = vs[k];
  }
  return dense;
}

}  // namespace parthom
