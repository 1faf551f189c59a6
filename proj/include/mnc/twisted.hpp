/**
 * Twisted simplicial cochains.
 *
 * A p-cochain assigns to each p-simplex (v0 < ... < vp) a value in the fiber
 * at its least vertex v0. The twisted coboundary is the ordinary alternating
 * face sum except that the 0th face, whose value lives at v1, is first carried
 * to v0 by the edge transport w(v0, v1):
 *
 *   (d c)(v0..v{p+1}) = w(v0,v1) c(v1..v{p+1}) + sum_{i>=1} (-1)^i c(.. ^vi ..)
 *
 * The triangle condition on w is exactly what makes d o d = 0.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mnc/complex.hpp"
#include "mnc/local_system.hpp"
#include "mnc/sparse_matrix.hpp"

namespace mnc {

/// Matrix of d: C^p -> C^{p+1}; rows are (p+1)-simplices and columns
/// p-simplices, both in lexicographic order. Degrees outside the complex give
/// matrices with zero rows or zero columns.
inline RationalSparseMatrix coboundary_matrix(const Complex& x, const WeightCocycle& w, int p) {
  const std::size_t cols = p < 0 ? 0 : x.count(p);
  const auto& higher = x.simplices(p + 1);
  RationalSparseMatrix d(p < 0 ? 0 : higher.size(), cols);
  if (p < 0) return d;
  for (std::size_t r = 0; r < higher.size(); ++r) {
    const Simplex& s = higher[r];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t col = *x.index_of(face(s, i));
      Rational coeff = (i % 2 == 0) ? 1 : -1;
      if (i == 0) coeff *= w.weight(s[0], s[1]);
      d.set(r, col, coeff);
    }
  }
  return d;
}

/// A finite cochain complex given by dimensions and coboundary matrices.
struct CochainComplex {
  std::vector<std::size_t> dims;                  // dim C^p for p = 0..top
  std::vector<RationalSparseMatrix> coboundaries;  // C^p -> C^{p+1}, p = 0..top

  int top_degree() const { return static_cast<int>(dims.size()) - 1; }

  std::size_t dim(int p) const {
    return (p < 0 || p > top_degree()) ? 0 : dims[static_cast<std::size_t>(p)];
  }

  /// d^p, including the zero maps at both ends.
  RationalSparseMatrix differential(int p) const {
    if (p < 0) return RationalSparseMatrix(dim(0), 0);
    if (p > top_degree()) return RationalSparseMatrix(0, 0);
    return coboundaries[static_cast<std::size_t>(p)];
  }

  /// Every composite d^{p+1} d^p vanishes.
  bool squares_to_zero() const {
    for (int p = 0; p + 1 <= top_degree(); ++p) {
      if (!differential(p + 1).multiply(differential(p)).is_zero_matrix()) return false;
    }
    return true;
  }
};

/// Raised when d o d != 0, i.e. the weights are not a cocycle.
class CocycleError : public InputError {
 public:
  using InputError::InputError;
};

/// (C^*(X), d_w) with all coboundary matrices built and d o d = 0 asserted.
class TwistedComplex {
 public:
  TwistedComplex(ComplexPtr x, WeightCocycle w) : complex_(std::move(x)), weights_(std::move(w)) {
    if (!(*weights_.complex() == *complex_)) throw InputError("weight system is on a different complex");
    for (int p = 0; p <= complex_->dimension(); ++p) {
      cochains_.dims.push_back(complex_->count(p));
      cochains_.coboundaries.push_back(coboundary_matrix(*complex_, weights_, p));
    }
    if (!cochains_.squares_to_zero()) {
      const auto diag = check_cocycle(weights_);
      throw CocycleError(diag.ok() ? "coboundary does not square to zero" : diag.issues.front());
    }
  }

  const ComplexPtr& complex() const { return complex_; }
  const WeightCocycle& weights() const { return weights_; }
  const CochainComplex& cochains() const { return cochains_; }

  RationalVector coboundary(int p, const RationalVector& c) const { return cochains_.differential(p).apply(c); }

 private:
  ComplexPtr complex_;
  WeightCocycle weights_;
  CochainComplex cochains_;
};

/// Cochains of X vanishing on the subcomplex A. kept[p] lists, in order, the
/// indices of the p-simplices of X outside A.
struct RelativeComplex {
  CochainComplex cochains;
  std::vector<std::vector<std::size_t>> kept;

  /// Extension by zero of a relative p-cochain to all of X.
  RationalVector extend(int p, const RationalVector& c, std::size_t full_dim) const {
    RationalVector out(full_dim);
    const auto& k = kept[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < k.size(); ++i) out[k[i]] = c[i];
    return out;
  }

  RationalVector restrict_from(int p, const RationalVector& full) const {
    const auto& k = kept[static_cast<std::size_t>(p)];
    RationalVector out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = full[k[i]];
    return out;
  }
};

inline RelativeComplex relative_complex(const TwistedComplex& x, const Complex& a) {
  const Complex& full = *x.complex();
  if (!is_subcomplex(a, full)) throw InputError("relative cohomology needs a subcomplex");
  RelativeComplex rel;
  const int top = full.dimension();
  std::vector<std::vector<long>> position(static_cast<std::size_t>(top + 1));
  for (int p = 0; p <= top; ++p) {
    std::vector<std::size_t> keep;
    auto& pos = position[static_cast<std::size_t>(p)];
    pos.assign(full.count(p), -1);
    for (std::size_t i = 0; i < full.count(p); ++i) {
      if (!a.contains(full.simplices(p)[i])) {
        pos[i] = static_cast<long>(keep.size());
        keep.push_back(i);
      }
    }
    rel.cochains.dims.push_back(keep.size());
    rel.kept.push_back(std::move(keep));
  }
  for (int p = 0; p <= top; ++p) {
    const auto& d = x.cochains().differential(p);
    const auto& rows = p + 1 <= top ? rel.kept[static_cast<std::size_t>(p + 1)] : std::vector<std::size_t>{};
    RationalSparseMatrix sub(rows.size(), rel.cochains.dims[static_cast<std::size_t>(p)]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, v] : d.row(rows[r])) {
        const long col = position[static_cast<std::size_t>(p)][c];
        if (col >= 0) sub.set(r, static_cast<std::size_t>(col), v);
      }
    }
    rel.cochains.coboundaries.push_back(std::move(sub));
  }
  return rel;
}

// ---------------------------------------------------------------------------

/// A cochain together with the local system it takes values in.
struct TwistedCochain {
  WeightCocycle system;
  int degree = 0;
  RationalVector values;  // indexed by the p-simplices of the complex
};

/// Twisted Alexander-Whitney product:
///   (a u b)(v0..v{p+q}) = a(v0..vp) * w_b(v0, vp) * b(vp..v{p+q})
/// where w_b(v0, vp) carries b's value from vp to v0. The result lives in the
/// tensor product system.
inline TwistedCochain cup(const TwistedCochain& a, const TwistedCochain& b) {
  require_same_complex(a.system, b.system);
  const Complex& x = *a.system.complex();
  const int n = a.degree + b.degree;
  TwistedCochain out{tensor(a.system, b.system), n, RationalVector(x.count(n))};
  const auto p = static_cast<std::size_t>(a.degree);
  for (std::size_t k = 0; k < x.count(n); ++k) {
    const Simplex& s = x.simplices(n)[k];
    Simplex front(s.begin(), s.begin() + static_cast<long>(p) + 1);
    Simplex back(s.begin() + static_cast<long>(p), s.end());
    const Rational& fa = a.values[*x.index_of(front)];
    if (fa.is_zero()) continue;
    const Rational& fb = b.values[*x.index_of(back)];
    if (fb.is_zero()) continue;
    out.values[k] = fa * b.system.transport(s[0], s[p]) * fb;
  }
  return out;
}

inline TwistedCochain coboundary(const TwistedCochain& c) {
  const Complex& x = *c.system.complex();
  return {c.system, c.degree + 1, coboundary_matrix(x, c.system, c.degree).apply(c.values)};
}

/// The constant-one 0-cochain of the trivial system.
inline TwistedCochain unit_cochain(const ComplexPtr& x) {
  return {WeightCocycle::trivial(x), 0, RationalVector(x->count(0), Rational(1))};
}

/// Pullback of a p-cochain on f's target (values in w_target) to f's source,
/// rescaled by the gauge u so that the result takes values in the system
/// w_source with pullback(f, w_target) == gauge_transform(w_source, u).
///
/// For a source simplex s with images y_i = f(s_i): collapsed images give 0;
/// otherwise the target value on sorted(y), transported from its least vertex
/// to y_0, times the sign of the sorting permutation, times u(s_0).
inline RationalVector pullback_cochain(const SimplicialMap& f, const WeightCocycle& w_target,
                                       const GaugeFunction* u, int p, const RationalVector& c) {
  const Complex& src = *f.source;
  const Complex& tgt = *f.target;
  RationalVector out(src.count(p));
  std::vector<std::pair<Vertex, std::size_t>> img;
  for (std::size_t k = 0; k < src.count(p); ++k) {
    const Simplex& s = src.simplices(p)[k];
    img.clear();
    for (std::size_t i = 0; i < s.size(); ++i) img.emplace_back(f.images[s[i]], i);
    std::sort(img.begin(), img.end());
    bool collapsed = false;
    for (std::size_t i = 1; i < img.size(); ++i) collapsed = collapsed || img[i].first == img[i - 1].first;
    if (collapsed) continue;
    Simplex t;
    std::vector<std::size_t> perm;
    for (const auto& [v, i] : img) {
      t.push_back(v);
      perm.push_back(i);
    }
    const Rational& value = c[*tgt.index_of(t)];
    if (value.is_zero()) continue;
    // parity of the sorting permutation
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        if (perm[i] > perm[j]) sign = -sign;
      }
    }
    Rational r = value * w_target.transport(f.images[s[0]], t[0]);
    if (u) r *= u->value[s[0]];
    out[k] = sign > 0 ? r : Rational(-r);
  }
  return out;
}

/// Restriction of a cochain on `ambient` to the subcomplex `sub`.
inline RationalVector restrict_cochain(const Complex& sub, const Complex& ambient, int p, const RationalVector& c) {
  const auto idx = inclusion_indices(sub, ambient, p);
  RationalVector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = c[idx[i]];
  return out;
}

/// Extension by zero of a cochain on `sub` to `ambient`.
inline RationalVector extend_cochain(const Complex& sub, const Complex& ambient, int p, const RationalVector& c) {
  const auto idx = inclusion_indices(sub, ambient, p);
  RationalVector out(ambient.count(p));
  for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = c[i];
  return out;
}

}  // namespace mnc
