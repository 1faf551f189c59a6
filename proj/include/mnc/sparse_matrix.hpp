/**
 * Row-compressed sparse matrix over the rationals.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "mnc/rational.hpp"

namespace mnc {

using Index = std::uint32_t;
using RationalVector = std::vector<Rational>;

template <class Value>
using SparseRow = std::vector<std::pair<Index, Value>>;

/// Sparse rational matrix. Rows are kept sorted by column; zeros are never
/// stored.
class RationalSparseMatrix {
 public:
  RationalSparseMatrix() = default;
  RationalSparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const SparseRow<Rational>& row(std::size_t r) const { return rows_[r]; }
  const std::vector<SparseRow<Rational>>& row_data() const { return rows_; }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  Rational at(std::size_t r, std::size_t c) const {
    check(r, c);
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<Index>(c),
                               [](const auto& e, Index col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rational(0);
  }

  /// Stores v at (r, c); storing zero erases the entry.
  void set(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<Index>(c),
                               [](const auto& e, Index col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      if (is_zero(v)) {
        row.erase(it);
      } else {
        it->second = v;
      }
    } else if (!is_zero(v)) {
      row.insert(it, {static_cast<Index>(c), v});
    }
  }

  /// Adds v to (r, c).
  void add(std::size_t r, std::size_t c, const Rational& v) {
    if (is_zero(v)) return;
    set(r, c, at(r, c) + v);
  }

  RationalSparseMatrix transpose() const {
    RationalSparseMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<Index>(r), v);
    }
    return t;
  }

  RationalVector apply(const RationalVector& x) const {
    if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    RationalVector y(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
    }
    return y;
  }

  /// this * other
  RationalSparseMatrix multiply(const RationalSparseMatrix& other) const {
    if (cols_ != other.rows()) throw InputError("matrix product dimension mismatch");
    RationalSparseMatrix out(rows_.size(), other.cols());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::vector<std::pair<Index, Rational>> acc;
      for (const auto& [k, v] : rows_[r]) {
        for (const auto& [c, w] : other.rows_[k]) acc.emplace_back(c, v * w);
      }
      std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      auto& dst = out.rows_[r];
      for (auto& [c, v] : acc) {
        if (!dst.empty() && dst.back().first == c) {
          dst.back().second += v;
        } else {
          dst.emplace_back(c, std::move(v));
        }
      }
      std::erase_if(dst, [](const auto& e) { return is_zero(e.second); });
    }
    return out;
  }

  bool is_zero_matrix() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
  }

  /// Appends a row given as a dense vector.
  void push_dense_row(const RationalVector& dense) {
    if (dense.size() != cols_) throw InputError("row length mismatch");
    SparseRow<Rational> row;
    for (std::size_t c = 0; c < dense.size(); ++c) {
      if (!is_zero(dense[c])) row.emplace_back(static_cast<Index>(c), dense[c]);
    }
    rows_.push_back(std::move(row));
  }

  /// Builds the matrix whose columns are the given vectors.
  static RationalSparseMatrix from_columns(std::size_t rows, const std::vector<RationalVector>& columns) {
    RationalSparseMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw InputError("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) {
        if (!is_zero(columns[c][r])) m.rows_[r].emplace_back(static_cast<Index>(c), columns[c][r]);
      }
    }
    return m;
  }

  static RationalSparseMatrix from_dense(const std::vector<RationalVector>& dense_rows, std::size_t cols) {
    RationalSparseMatrix m(0, cols);
    for (const auto& r : dense_rows) m.push_dense_row(r);
    return m;
  }

  static RationalSparseMatrix identity(std::size_t n) {
    RationalSparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(static_cast<Index>(i), Rational(1));
    return m;
  }

  friend bool operator==(const RationalSparseMatrix&, const RationalSparseMatrix&) = default;

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= cols_) throw InputError("matrix index out of range");
  }

  std::size_t cols_ = 0;
  std::vector<SparseRow<Rational>> rows_;
};

}  // namespace mnc
