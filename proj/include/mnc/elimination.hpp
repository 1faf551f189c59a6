/**
 * Sparse Gaussian elimination with Markowitz-style pivoting.
 *
 * The eliminator is generic over the coefficient field so that the same pivot
 * strategy runs over the rationals (exact answers) and over Z/p (the fast
 * modular cross-check). Pivot choice: the live column with the fewest entries,
 * then the shortest row within it; ties go to the lowest index. The pivot
 * sequence is therefore a deterministic function of the input.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mnc/rational.hpp"
#include "mnc/sparse_matrix.hpp"

namespace mnc {

struct RationalField {
  using value_type = Rational;
  bool is_zero(const Rational& a) const { return a.is_zero(); }
  Rational div(const Rational& a, const Rational& b) const { return a / b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational convert(const Rational& a) const { return a; }
};

/// Z/p for a prime p < 2^62.
struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t p;

  bool is_zero(std::uint64_t a) const { return a == 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mul_mod(a, b, p); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, pow_mod(b, p - 2, p)); }
  std::uint64_t convert(const Rational& a) const { return reduce_mod(a, p); }
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

template <class Field>
class SparseEliminator {
 public:
  using Value = typename Field::value_type;
  using Row = SparseRow<Value>;

  struct Pivot {
    Index col;
    Row row;  // the pivot row as it stood when chosen
  };

  /// Columns with index >= eligible_cols are carried along (right-hand sides)
  /// but never chosen as pivots.
  SparseEliminator(Field field, std::size_t eligible_cols, std::vector<Row> rows)
      : field_(std::move(field)), eligible_(eligible_cols), rows_(std::move(rows)) {}

  void set_progress(ProgressFn fn) { progress_ = std::move(fn); }

  void run() {
    const std::size_t n_rows = rows_.size();
    active_.assign(n_rows, true);
    count_.assign(eligible_, 0);
    col_rows_.assign(eligible_, {});
    for (std::size_t r = 0; r < n_rows; ++r) {
      for (const auto& [c, v] : rows_[r]) {
        if (c < eligible_) {
          ++count_[c];
          col_rows_[c].push_back(static_cast<Index>(r));
        }
      }
    }
    for (std::size_t c = 0; c < eligible_; ++c) {
      if (count_[c] > 0) queue_.emplace(count_[c], static_cast<Index>(c));
    }
    const std::size_t bound = std::min(n_rows, eligible_);
    while (!queue_.empty()) {
      const Index col = queue_.begin()->second;
      eliminate_column(col);
      if (progress_ && (pivots_.size() % 256 == 0)) progress_(pivots_.size(), bound);
    }
    if (progress_) progress_(pivots_.size(), bound);
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::vector<Pivot>& pivots() const { return pivots_; }

  /// Rows never chosen as pivots; after run() they hold only carried columns.
  std::vector<Row> remaining_rows() const {
    std::vector<Row> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (active_[r]) out.push_back(rows_[r]);
    }
    return out;
  }

  const Field& field() const { return field_; }
  std::size_t eligible_cols() const { return eligible_; }

 private:
  static const Value* find(const Row& row, Index col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, Index c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
  }

  std::size_t eligible_length(const Row& row) const {
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<Index>(eligible_),
                               [](const auto& e, Index c) { return e.first < c; });
    return static_cast<std::size_t>(it - row.begin());
  }

  void change_count(Index c, long delta) {
    if (c >= eligible_) return;
    if (count_[c] > 0) queue_.erase({count_[c], c});
    count_[c] = static_cast<std::size_t>(static_cast<long>(count_[c]) + delta);
    if (count_[c] > 0) queue_.emplace(count_[c], c);
  }

  void eliminate_column(Index col) {
    auto& candidates = col_rows_[col];
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::erase_if(candidates, [&](Index r) { return !active_[r] || find(rows_[r], col) == nullptr; });

    Index best = candidates.front();
    std::size_t best_len = eligible_length(rows_[best]);
    for (Index r : candidates) {
      const std::size_t len = eligible_length(rows_[r]);
      if (len < best_len) {
        best = r;
        best_len = len;
      }
    }

    Row pivot_row = std::move(rows_[best]);
    rows_[best].clear();
    active_[best] = false;
    for (const auto& entry : pivot_row) change_count(entry.first, -1);

    const Value pivot_value = *find(pivot_row, col);
    for (Index r : candidates) {
      if (r == best) continue;
      const Value factor = field_.div(*find(rows_[r], col), pivot_value);
      rows_[r] = subtract_multiple(r, rows_[r], factor, pivot_row);
    }
    candidates.clear();
    candidates.shrink_to_fit();
    pivots_.push_back({col, std::move(pivot_row)});
  }

  // target - factor * pivot, maintaining column counts for row `r`.
  Row subtract_multiple(Index r, const Row& target, const Value& factor, const Row& pivot) {
    Row out;
    out.reserve(target.size() + pivot.size());
    auto a = target.begin();
    auto b = pivot.begin();
    while (a != target.end() || b != pivot.end()) {
      if (b == pivot.end() || (a != target.end() && a->first < b->first)) {
        out.push_back(*a);
        ++a;
      } else if (a == target.end() || b->first < a->first) {
        out.emplace_back(b->first, field_.neg(field_.mul(factor, b->second)));
        change_count(b->first, +1);
        if (b->first < eligible_) col_rows_[b->first].push_back(r);
        ++b;
      } else {
        Value v = field_.sub(a->second, field_.mul(factor, b->second));
        if (field_.is_zero(v)) {
          change_count(a->first, -1);
        } else {
          out.emplace_back(a->first, std::move(v));
        }
        ++a;
        ++b;
      }
    }
    return out;
  }

  Field field_;
  std::size_t eligible_;
  std::vector<Row> rows_;
  std::vector<bool> active_;
  std::vector<std::size_t> count_;
  std::vector<std::vector<Index>> col_rows_;
  std::set<std::pair<std::size_t, Index>> queue_;
  std::vector<Pivot> pivots_;
  ProgressFn progress_;
};

namespace detail {

template <class Field>
std::vector<SparseRow<typename Field::value_type>> convert_rows(const Field& field,
                                                                 const RationalSparseMatrix& m) {
  std::vector<SparseRow<typename Field::value_type>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      auto x = field.convert(v);
      if (!field.is_zero(x)) rows[r].emplace_back(c, std::move(x));
    }
  }
  return rows;
}

// Back substitution through the recorded pivots. `x` must already hold the
// values of all free variables; `rhs_col` selects a carried column (or none).
inline void back_substitute(const std::vector<SparseEliminator<RationalField>::Pivot>& pivots,
                            std::size_t eligible, RationalVector& x, std::optional<Index> rhs_col) {
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational acc = 0;
    Rational diag = 0;
    for (const auto& [c, v] : it->row) {
      if (c == it->col) {
        diag = v;
      } else if (c < eligible) {
        if (!x[c].is_zero()) acc += v * x[c];
      } else if (rhs_col && c == *rhs_col) {
        acc -= v;
      }
    }
    x[it->col] = -acc / diag;
  }
}

}  // namespace detail

/// Exact rank over the rationals.
inline std::size_t rank(const RationalSparseMatrix& m, ProgressFn progress = {}) {
  SparseEliminator<RationalField> elim({}, m.cols(), detail::convert_rows(RationalField{}, m));
  if (progress) elim.set_progress(std::move(progress));
  elim.run();
  return elim.rank();
}

/// Rank of the reduction of m modulo the prime p. Throws BadPrimeError when p
/// divides a stored denominator; the caller should retry with another prime.
inline std::size_t rank_mod_p(const RationalSparseMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  PrimeField field{p};
  SparseEliminator<PrimeField> elim(field, m.cols(), detail::convert_rows(field, m));
  elim.run();
  return elim.rank();
}

/// Basis of {v : m v = 0}, one vector per non-pivot column, in increasing
/// order of that column.
inline std::vector<RationalVector> nullspace_basis(const RationalSparseMatrix& m) {
  SparseEliminator<RationalField> elim({}, m.cols(), detail::convert_rows(RationalField{}, m));
  elim.run();
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& p : elim.pivots()) is_pivot[p.col] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(m.cols());
    x[free] = 1;
    detail::back_substitute(elim.pivots(), m.cols(), x, std::nullopt);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves m x = b for each right-hand side; an empty optional marks an
/// inconsistent system. Free variables are set to zero.
inline std::vector<std::optional<RationalVector>> solve_many(const RationalSparseMatrix& m,
                                                             const std::vector<RationalVector>& rhs) {
  auto rows = detail::convert_rows(RationalField{}, m);
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    if (rhs[k].size() != m.rows()) throw InputError("right-hand side length does not match matrix rows");
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!rhs[k][r].is_zero()) rows[r].emplace_back(static_cast<Index>(m.cols() + k), rhs[k][r]);
    }
  }
  SparseEliminator<RationalField> elim({}, m.cols(), std::move(rows));
  elim.run();
  std::vector<bool> consistent(rhs.size(), true);
  for (const auto& row : elim.remaining_rows()) {
    for (const auto& [c, v] : row) {
      if (c >= m.cols()) consistent[c - m.cols()] = false;
    }
  }
  std::vector<std::optional<RationalVector>> out;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    if (!consistent[k]) {
      out.emplace_back(std::nullopt);
      continue;
    }
    RationalVector x(m.cols());
    detail::back_substitute(elim.pivots(), m.cols(), x, static_cast<Index>(m.cols() + k));
    out.emplace_back(std::move(x));
  }
  return out;
}

inline std::optional<RationalVector> solve(const RationalSparseMatrix& m, const RationalVector& b) {
  return solve_many(m, {b}).front();
}

}  // namespace mnc
