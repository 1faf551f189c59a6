/**
 * Twisted cohomology: Betti numbers, representative bases, relative
 * cohomology, induced maps and Lefschetz numbers.
 */
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mnc/complex.hpp"
#include "mnc/elimination.hpp"
#include "mnc/local_system.hpp"
#include "mnc/twisted.hpp"

namespace mnc {

/// Tally of exact-versus-modular rank comparisons.
struct RankAudit {
  std::size_t matrices = 0;
  std::size_t comparisons = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> skipped_primes;
};

struct RankOptions {
  /// Ranks from Z/p only (maximum over `primes`); results are probabilistic.
  bool modular_only = false;
  std::vector<std::uint64_t> primes;
  /// When set, every exact rank is also computed modulo each prime and the
  /// outcome is recorded here.
  RankAudit* audit = nullptr;
  std::function<void(const std::string&)> progress;
};

/// Three fixed 30-bit primes used when no primes are supplied.
inline const std::vector<std::uint64_t>& default_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::mt19937_64 rng(20240229);
    return random_primes(rng, 3);
  }();
  return primes;
}

/// Rank under the given policy. `probabilistic` is set when the answer came
/// from modular arithmetic alone.
inline std::size_t policy_rank(const RationalSparseMatrix& m, const RankOptions& opts, bool* probabilistic = nullptr,
                               const std::string& label = "matrix") {
  const auto& primes = opts.primes.empty() ? default_primes() : opts.primes;
  if (opts.progress) {
    opts.progress(label + ": " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", " +
                  std::to_string(m.nonzeros()) + " nonzeros");
  }
  if (opts.modular_only) {
    std::size_t best = 0;
    bool any = false;
    for (auto p : primes) {
      try {
        best = std::max(best, rank_mod_p(m, p));
        any = true;
      } catch (const BadPrimeError&) {
      }
    }
    if (!any) return rank(m);
    if (probabilistic) *probabilistic = true;
    return best;
  }
  const std::size_t exact = rank(m);
  if (opts.audit) {
    ++opts.audit->matrices;
    for (auto p : primes) {
      try {
        const std::size_t r = rank_mod_p(m, p);
        ++opts.audit->comparisons;
        if (r != exact) {
          opts.audit->mismatches.push_back(label + ": rank " + std::to_string(exact) + " but " + std::to_string(r) +
                                           " mod " + std::to_string(p));
        }
      } catch (const BadPrimeError&) {
        opts.audit->skipped_primes.push_back(label + ": " + std::to_string(p));
      }
    }
  }
  return exact;
}

// ---------------------------------------------------------------------------

/// A basis of ker(d^p) / im(d^{p-1}) and the coordinate map onto it.
///
/// Generators of the image are inserted first into an echelon structure
/// (leading index = smallest nonzero position), then kernel vectors in the
/// order returned by nullspace_basis(); each kernel vector that survives
/// reduction becomes a representative. Every echelon row remembers its
/// expression in the representatives, so reducing a cocycle to zero yields
/// its coordinates.
class QuotientBasis {
 public:
  QuotientBasis() = default;

  QuotientBasis(const RationalSparseMatrix& incoming, const RationalSparseMatrix& outgoing) {
    const auto incoming_t = incoming.transpose();
    for (std::size_t c = 0; c < incoming_t.rows(); ++c) {
      Row v = incoming_t.row(c);
      Row combo;
      reduce(v, combo);
      if (!v.empty()) insert(std::move(v), std::move(combo));
    }
    for (auto& k : nullspace_basis(outgoing)) {
      Row v = to_sparse(k);
      Row combo;
      reduce(v, combo);
      if (v.empty()) continue;
      const auto id = static_cast<Index>(reps_.size());
      reps_.push_back(std::move(k));
      // reduced = k - sum(alpha_j row_j), so its combination is e_id - combo
      for (auto& [i, a] : combo) a = -a;
      combo.emplace_back(id, Rational(1));
      insert(std::move(v), std::move(combo));
    }
  }

  std::size_t dimension() const { return reps_.size(); }
  const std::vector<RationalVector>& representatives() const { return reps_; }

  /// Coordinates of a cocycle; empty when the vector is not a cocycle.
  std::optional<RationalVector> coordinates(const RationalVector& cocycle) const {
    Row v = to_sparse(cocycle);
    Row combo;
    reduce(v, combo);
    if (!v.empty()) return std::nullopt;
    RationalVector out(reps_.size());
    for (const auto& [i, a] : combo) out[i] += a;
    return out;
  }

 private:
  using Row = SparseRow<Rational>;

  struct Echelon {
    Row vec;
    Row combo;  // in terms of representatives
  };

  static Row to_sparse(const RationalVector& d) {
    Row r;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d[i].is_zero()) r.emplace_back(static_cast<Index>(i), d[i]);
    }
    return r;
  }

  static Row axpy(const Row& x, const Rational& a, const Row& y) {  // x - a*y
    Row out;
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() || j != y.end()) {
      if (j == y.end() || (i != x.end() && i->first < j->first)) {
        out.push_back(*i++);
      } else if (i == x.end() || j->first < i->first) {
        out.emplace_back(j->first, -a * j->second);
        ++j;
      } else {
        Rational v = i->second - a * j->second;
        if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Reduces v by leading entries; combo accumulates sum(alpha_j combo_j).
  void reduce(Row& v, Row& combo) const {
    while (!v.empty()) {
      auto it = rows_.find(v.front().first);
      if (it == rows_.end()) return;  // independent of everything inserted so far
      const Rational alpha = v.front().second / it->second.vec.front().second;
      v = axpy(v, alpha, it->second.vec);
      if (!it->second.combo.empty()) combo = axpy(combo, -alpha, it->second.combo);
    }
  }

  void insert(Row v, Row combo) {
    std::sort(combo.begin(), combo.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const Index lead = v.front().first;
    rows_.emplace(lead, Echelon{std::move(v), std::move(combo)});
  }

  std::map<Index, Echelon> rows_;
  std::vector<RationalVector> reps_;
};

struct CohomologyOptions {
  bool bases = true;
  RankOptions ranks;
};

struct CohomologyResult {
  std::vector<std::size_t> betti;                  // length top degree + 1
  std::vector<std::vector<RationalVector>> bases;  // empty unless requested
  long long euler_twisted = 0;
  bool probabilistic = false;
  std::vector<std::shared_ptr<const QuotientBasis>> quotients;
  bool with_bases = false;

  bool has_bases() const { return with_bases; }

  /// Coordinates of a p-cocycle in bases[p]. Throws when it is not a cocycle.
  RationalVector coordinates(int p, const RationalVector& cocycle) const {
    if (!has_bases()) throw InputError("cohomology was computed without bases");
    if (p < 0 || p >= static_cast<int>(quotients.size())) return {};
    auto c = quotients[static_cast<std::size_t>(p)]->coordinates(cocycle);
    if (!c) throw std::logic_error("vector is not a cocycle in degree " + std::to_string(p));
    return *c;
  }
};

inline CohomologyResult cohomology(const CochainComplex& cx, const CohomologyOptions& opts = {}) {
  CohomologyResult out;
  out.with_bases = opts.bases;
  const int top = cx.top_degree();
  if (opts.bases) {
    for (int p = 0; p <= top; ++p) {
      auto q = std::make_shared<const QuotientBasis>(cx.differential(p - 1), cx.differential(p));
      out.betti.push_back(q->dimension());
      out.bases.push_back(q->representatives());
      out.quotients.push_back(std::move(q));
    }
    if (opts.ranks.audit) {
      // The rank route must agree with the basis route.
      std::vector<std::size_t> ranks;
      for (int p = 0; p <= top; ++p) {
        ranks.push_back(policy_rank(cx.differential(p), opts.ranks, nullptr, "degree " + std::to_string(p) + " coboundary"));
      }
      for (int p = 0; p <= top; ++p) {
        const auto up = static_cast<std::size_t>(p);
        if (cx.dim(p) - ranks[up] - (p > 0 ? ranks[up - 1] : 0) != out.betti[up]) {
          opts.ranks.audit->mismatches.push_back("degree " + std::to_string(p) + ": basis and rank Betti numbers differ");
        }
      }
    }
  } else {
    std::vector<std::size_t> ranks;
    for (int p = 0; p <= top; ++p) {
      ranks.push_back(policy_rank(cx.differential(p), opts.ranks, &out.probabilistic,
                                  "degree " + std::to_string(p) + " coboundary"));
    }
    for (int p = 0; p <= top; ++p) {
      const auto up = static_cast<std::size_t>(p);
      out.betti.push_back(cx.dim(p) - ranks[up] - (p > 0 ? ranks[up - 1] : 0));
    }
  }
  for (std::size_t p = 0; p < out.betti.size(); ++p) {
    out.euler_twisted += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(out.betti[p]);
  }
  return out;
}

inline CohomologyResult cohomology(const ComplexPtr& x, const WeightCocycle& w, const CohomologyOptions& opts = {}) {
  return cohomology(TwistedComplex(x, w).cochains(), opts);
}

/// Cohomology of the cochains vanishing on the subcomplex a.
inline CohomologyResult relative_cohomology(const ComplexPtr& x, const Complex& a, const WeightCocycle& w,
                                            const CohomologyOptions& opts = {}) {
  return cohomology(relative_complex(TwistedComplex(x, w), a).cochains, opts);
}

/// Number of components on which w is exact; equals betti[0].
inline std::size_t h0_criterion(const WeightCocycle& w) { return exact_component_count(w); }

// ---------------------------------------------------------------------------

/// Small dense rational matrix (maps between cohomology groups).
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Rational& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  void set_column(std::size_t c, const RationalVector& v) {
    for (std::size_t r = 0; r < rows; ++r) at(r, c) = v[r];
  }

  RationalSparseMatrix to_sparse() const {
    RationalSparseMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (!at(r, c).is_zero()) m.set(r, c, at(r, c));
      }
    }
    return m;
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data) {
      if (!v.is_zero()) return false;
    }
    return true;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw InputError("dense product dimension mismatch");
    DenseMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (std::size_t k = 0; k < a.cols; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

inline std::size_t rank(const DenseMatrix& m) { return rank(m.to_sparse()); }

/// A degree-preserving linear map between cohomology groups, one matrix per
/// degree (rows index target basis vectors, columns source ones).
struct InducedMap {
  std::shared_ptr<const CohomologyResult> source;
  std::shared_ptr<const CohomologyResult> target;
  std::vector<DenseMatrix> matrices;

  bool is_isomorphism() const {
    for (const auto& m : matrices) {
      if (m.rows != m.cols || rank(m) != m.rows) return false;
    }
    return true;
  }
};

using CochainMap = std::function<RationalVector(int degree, const RationalVector& cochain)>;

/// Matrices of the map a cochain map induces between two computed
/// cohomologies (both with bases). Degrees missing on either side map to or
/// from zero.
inline InducedMap induced_from_cochain_map(std::shared_ptr<const CohomologyResult> source,
                                           std::shared_ptr<const CohomologyResult> target, const CochainMap& map) {
  InducedMap out{source, target, {}};
  const std::size_t degrees = std::max(source->betti.size(), target->betti.size());
  for (std::size_t p = 0; p < degrees; ++p) {
    const std::size_t cols = p < source->betti.size() ? source->betti[p] : 0;
    const std::size_t rows = p < target->betti.size() ? target->betti[p] : 0;
    DenseMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows == 0) break;
      m.set_column(j, target->coordinates(static_cast<int>(p), map(static_cast<int>(p), source->bases[p][j])));
    }
    out.matrices.push_back(std::move(m));
  }
  return out;
}

/// Checks pullback(f, w_target) == gauge_transform(w_source, u), naming the
/// first offending edge otherwise.
inline void require_gauge_match(const SimplicialMap& f, const WeightCocycle& w_target, const WeightCocycle& w_source,
                                const GaugeFunction& u) {
  const auto pulled = pullback(f, w_target);
  const auto expected = gauge_transform(w_source, u);
  const auto& edges = f.source->simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (pulled.edge_weights()[e] != expected.edge_weights()[e]) {
      throw GaugeError("pulled-back weight on edge " + to_string(edges[e]) + " is " +
                       to_string(pulled.edge_weights()[e]) + " but the gauged source system has " +
                       to_string(expected.edge_weights()[e]));
    }
  }
}

/// f*: H(target, w_target) -> H(source, w_source), given a gauge u with
/// pullback(f, w_target) == gauge_transform(w_source, u) (u defaults to 1).
inline InducedMap induced_map(const SimplicialMap& f, const WeightCocycle& w_target, const WeightCocycle& w_source,
                              const std::optional<GaugeFunction>& u = std::nullopt, const RankOptions& ranks = {}) {
  const auto validity = f.validate();
  if (!validity.ok()) throw InputError(validity.issues.front());
  const GaugeFunction gauge = u ? *u : GaugeFunction::constant(f.source);
  require_gauge_match(f, w_target, w_source, gauge);
  const CohomologyOptions opts{true, ranks};
  auto tgt = std::make_shared<const CohomologyResult>(cohomology(f.target, w_target, opts));
  auto src = std::make_shared<const CohomologyResult>(cohomology(f.source, w_source, opts));
  return induced_from_cochain_map(tgt, src, [&](int p, const RationalVector& c) {
    return pullback_cochain(f, w_target, &gauge, p, c);
  });
}

/// Alternating sum of traces of f* on H(X, w) for a self-map f with
/// pullback(f, w) == gauge_transform(w, u).
inline Rational lefschetz_number(const SimplicialMap& f, const WeightCocycle& w, const GaugeFunction& u,
                                 const RankOptions& ranks = {}) {
  const auto map = induced_map(f, w, w, u, ranks);
  Rational total = 0;
  for (std::size_t p = 0; p < map.matrices.size(); ++p) {
    total += (p % 2 == 0 ? 1 : -1) * map.matrices[p].trace();
  }
  return total;
}

}  // namespace mnc
