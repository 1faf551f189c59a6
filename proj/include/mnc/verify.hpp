/**
 * Verification routines. Each returns a Report holding both sides of the
 * checked identity, a verdict, and the failing degrees or nodes.
 */
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "mnc/builtin.hpp"
#include "mnc/cohomology.hpp"
#include "mnc/constructions.hpp"
#include "mnc/local_system.hpp"
#include "mnc/manifold.hpp"
#include "mnc/oracles.hpp"
#include "mnc/twisted.hpp"

namespace mnc {

struct Report {
  std::string suite;    // short key: kunneth, pd, euler, ...
  std::string claim;    // the identity being checked
  std::string subject;  // the inputs it was checked on
  std::vector<Rational> lhs;
  std::vector<Rational> rhs;
  bool pass = true;
  bool probabilistic = false;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class T>
std::vector<Rational> as_rationals(const std::vector<T>& v) {
  return std::vector<Rational>(v.begin(), v.end());
}

// Compares lhs and rhs entrywise (shorter side padded with zeros).
inline void compare_degrees(Report& r) {
  const std::size_t n = std::max(r.lhs.size(), r.rhs.size());
  r.lhs.resize(n);
  r.rhs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (r.lhs[k] != r.rhs[k]) {
      r.fail("degree " + std::to_string(k) + ": " + to_string(r.lhs[k]) + " != " + to_string(r.rhs[k]));
    }
  }
}

inline CohomologyOptions rank_only(const RankOptions& ranks) { return {false, ranks}; }

inline std::size_t betti_at(const CohomologyResult& h, std::size_t p) {
  return p < h.betti.size() ? h.betti[p] : 0;
}

inline std::optional<RationalVector> coordinates_at(const CohomologyResult& h, std::size_t p, const RationalVector& c) {
  if (p >= h.quotients.size()) return RationalVector{};
  return h.quotients[p]->coordinates(c);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exactness of a sequence of finite-dimensional spaces

struct SequenceNode {
  std::string name;
  std::size_t dim = 0;
};

/// Checks image = kernel at every node of V0 -> V1 -> ... -> Vn, where maps[i]
/// is V_i -> V_{i+1}; the maps into V0 and out of Vn are zero.
inline void check_exactness(const std::vector<SequenceNode>& nodes, const std::vector<DenseMatrix>& maps, Report& r) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const DenseMatrix* in = i > 0 ? &maps[i - 1] : nullptr;
    const DenseMatrix* out = i < maps.size() ? &maps[i] : nullptr;
    const std::size_t rank_in = in ? rank(*in) : 0;
    const std::size_t rank_out = out ? rank(*out) : 0;
    if (in && out && !((*out) * (*in)).is_zero()) {
      r.fail("at " + nodes[i].name + ": composite of consecutive maps is nonzero");
    }
    if (rank_in + rank_out != nodes[i].dim) {
      r.fail("at " + nodes[i].name + ": rank in " + std::to_string(rank_in) + " + rank out " +
             std::to_string(rank_out) + " != dim " + std::to_string(nodes[i].dim));
    }
  }
}

// ---------------------------------------------------------------------------

inline Report verify_h0(const ComplexPtr& x, const WeightCocycle& w, const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"h0", "betti[0] equals the number of components carrying an exact system"};
  const auto h = cohomology(x, w, detail::rank_only(ranks));
  r.lhs = {Rational(detail::betti_at(h, 0))};
  r.rhs = {Rational(h0_criterion(w))};
  detail::compare_degrees(r);
  r.probabilistic = h.probabilistic;
  r.seconds = clock.seconds();
  return r;
}

inline Report verify_euler(const ComplexPtr& x, const WeightCocycle& w, const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"euler", "twisted Euler characteristic equals the simplicial one"};
  const auto h = cohomology(x, w, detail::rank_only(ranks));
  r.lhs = {Rational(h.euler_twisted)};
  r.rhs = {Rational(euler_characteristic(*x))};
  detail::compare_degrees(r);
  r.probabilistic = h.probabilistic;
  r.seconds = clock.seconds();
  return r;
}

/// betti(A x B, product system) against the convolution of the factors.
inline Report verify_kunneth(const ComplexPtr& a, const WeightCocycle& wa, const ComplexPtr& b,
                             const WeightCocycle& wb, const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"kunneth", "betti of the product equals the convolution of the factors"};
  const auto prod = product(a, b);
  const auto h = cohomology(prod.complex, product_system(prod, wa, wb), detail::rank_only(ranks));
  const auto ha = cohomology(a, wa, detail::rank_only(ranks));
  const auto hb = cohomology(b, wb, detail::rank_only(ranks));
  r.lhs = detail::as_rationals(h.betti);
  r.rhs = detail::as_rationals(oracle::convolve(ha.betti, hb.betti));
  detail::compare_degrees(r);
  r.probabilistic = h.probabilistic || ha.probabilistic || hb.probabilistic;
  r.seconds = clock.seconds();
  return r;
}

/// betti(X, w)[p] against betti(X, w^-1)[n - p] on a certified closed
/// oriented manifold.
inline Report verify_poincare(const OrientedManifoldCertificate& cert, const WeightCocycle& w,
                              const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"pd", "betti(X, w)[p] equals betti(X, w^-1)[n-p]"};
  const auto h = cohomology(cert.complex, w, detail::rank_only(ranks));
  const auto hd = cohomology(cert.complex, inverse(w), detail::rank_only(ranks));
  r.lhs = detail::as_rationals(h.betti);
  r.rhs.assign(hd.betti.rbegin(), hd.betti.rend());
  detail::compare_degrees(r);
  r.probabilistic = h.probabilistic || hd.probabilistic;
  r.seconds = clock.seconds();
  return r;
}

inline Report verify_poincare(const ComplexPtr& x, const WeightCocycle& w, const RankOptions& ranks = {}) {
  const auto cert = orientable_certificate(x);
  if (!cert) {
    throw PreconditionError(
        "Poincare duality needs a closed connected orientable pseudomanifold; orientation propagation failed or "
        "the complex is not closed");
  }
  return verify_poincare(*cert, w, ranks);
}

/// Exactness of ... -> H(X,A) -> H(X) -> H(A) -> H^{+1}(X,A) -> ...
inline Report les_of_pair(const ComplexPtr& x, const ComplexPtr& a, const WeightCocycle& w,
                          const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"les", "long exact sequence of the pair is exact"};
  const CohomologyOptions opts{true, ranks};
  const TwistedComplex tx(x, w);
  const auto rel = relative_complex(tx, *a);
  const auto h_rel = cohomology(rel.cochains, opts);
  const auto h_x = cohomology(tx.cochains(), opts);
  const auto w_a = restrict_to(w, a);
  const auto h_a = cohomology(a, w_a, opts);
  const int n = x->dimension();

  std::vector<SequenceNode> nodes;
  std::vector<DenseMatrix> maps;
  auto coords = [&](const CohomologyResult& h, std::size_t p, const RationalVector& c, const std::string& where) {
    auto v = detail::coordinates_at(h, p, c);
    if (!v) {
      r.fail(where + ": image is not a cocycle");
      return RationalVector(detail::betti_at(h, p));
    }
    return *v;
  };
  for (int p = 0; p <= n; ++p) {
    const auto up = static_cast<std::size_t>(p);
    const std::string deg = std::to_string(p);
    nodes.push_back({"H^" + deg + "(X,A)", detail::betti_at(h_rel, up)});
    nodes.push_back({"H^" + deg + "(X)", detail::betti_at(h_x, up)});
    nodes.push_back({"H^" + deg + "(A)", detail::betti_at(h_a, up)});

    DenseMatrix j(detail::betti_at(h_x, up), detail::betti_at(h_rel, up));
    for (std::size_t k = 0; k < j.cols; ++k) {
      j.set_column(k, coords(h_x, up, rel.extend(p, h_rel.bases[up][k], x->count(p)), "H^" + deg + "(X,A)->H(X)"));
    }
    DenseMatrix i(detail::betti_at(h_a, up), detail::betti_at(h_x, up));
    for (std::size_t k = 0; k < i.cols; ++k) {
      i.set_column(k, coords(h_a, up, restrict_cochain(*a, *x, p, h_x.bases[up][k]), "H^" + deg + "(X)->H(A)"));
    }
    maps.push_back(std::move(j));
    maps.push_back(std::move(i));
    if (p < n) {
      DenseMatrix delta(detail::betti_at(h_rel, up + 1), detail::betti_at(h_a, up));
      for (std::size_t k = 0; k < delta.cols; ++k) {
        const auto lifted = extend_cochain(*a, *x, p, h_a.bases[up][k]);
        const auto image = tx.coboundary(p, lifted);
        delta.set_column(k, coords(h_rel, up + 1, rel.restrict_from(p + 1, image), "connecting map in degree " + deg));
      }
      maps.push_back(std::move(delta));
    }
  }
  check_exactness(nodes, maps, r);
  for (const auto& node : nodes) r.lhs.push_back(Rational(node.dim));
  r.notes.push_back("lhs lists the dimensions along the sequence");
  r.seconds = clock.seconds();
  return r;
}

/// Exactness of ... -> H(X) -> H(U) + H(V) -> H(U n V) -> H^{+1}(X) -> ...
/// for subcomplexes with U u V = X.
inline Report verify_mayer_vietoris(const ComplexPtr& x, const ComplexPtr& u, const ComplexPtr& v,
                                    const WeightCocycle& w, const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"mv", "Mayer-Vietoris sequence is exact"};
  if (!is_subcomplex(*u, *x) || !is_subcomplex(*v, *x)) throw InputError("U and V must be subcomplexes of X");
  for (int p = 0; p <= x->dimension(); ++p) {
    for (const auto& s : x->simplices(p)) {
      if (!u->contains(s) && !v->contains(s)) throw InputError("U and V do not cover simplex " + to_string(s));
    }
  }
  const auto uv = share(intersection(*u, *v));
  const CohomologyOptions opts{true, ranks};
  const auto w_u = restrict_to(w, u);
  const auto w_v = restrict_to(w, v);
  const auto w_uv = restrict_to(w, uv);
  const TwistedComplex tu(u, w_u);
  const auto h_x = cohomology(x, w, opts);
  const auto h_u = cohomology(tu.cochains(), opts);
  const auto h_v = cohomology(v, w_v, opts);
  const auto h_uv = cohomology(uv, w_uv, opts);
  const int n = x->dimension();

  auto coords = [&](const CohomologyResult& h, std::size_t p, const RationalVector& c, const std::string& where) {
    auto vec = detail::coordinates_at(h, p, c);
    if (!vec) {
      r.fail(where + ": image is not a cocycle");
      return RationalVector(detail::betti_at(h, p));
    }
    return *vec;
  };

  std::vector<SequenceNode> nodes;
  std::vector<DenseMatrix> maps;
  for (int p = 0; p <= n; ++p) {
    const auto up = static_cast<std::size_t>(p);
    const std::string deg = std::to_string(p);
    const std::size_t bx = detail::betti_at(h_x, up);
    const std::size_t bu = detail::betti_at(h_u, up);
    const std::size_t bv = detail::betti_at(h_v, up);
    const std::size_t buv = detail::betti_at(h_uv, up);
    nodes.push_back({"H^" + deg + "(X)", bx});
    nodes.push_back({"H^" + deg + "(U)+H^" + deg + "(V)", bu + bv});
    nodes.push_back({"H^" + deg + "(U n V)", buv});

    DenseMatrix restrict(bu + bv, bx);
    for (std::size_t k = 0; k < bx; ++k) {
      const auto& z = h_x.bases[up][k];
      auto cu = coords(h_u, up, restrict_cochain(*u, *x, p, z), "H^" + deg + "(X)->H(U)");
      auto cv = coords(h_v, up, restrict_cochain(*v, *x, p, z), "H^" + deg + "(X)->H(V)");
      for (std::size_t i = 0; i < bu; ++i) restrict.at(i, k) = cu[i];
      for (std::size_t i = 0; i < bv; ++i) restrict.at(bu + i, k) = cv[i];
    }
    DenseMatrix difference(buv, bu + bv);
    for (std::size_t k = 0; k < bu; ++k) {
      difference.set_column(k, coords(h_uv, up, restrict_cochain(*uv, *u, p, h_u.bases[up][k]), "H(U)->H(U n V)"));
    }
    for (std::size_t k = 0; k < bv; ++k) {
      auto c = restrict_cochain(*uv, *v, p, h_v.bases[up][k]);
      for (auto& q : c) q = -q;
      difference.set_column(bu + k, coords(h_uv, up, c, "H(V)->H(U n V)"));
    }
    maps.push_back(std::move(restrict));
    maps.push_back(std::move(difference));
    if (p < n) {
      DenseMatrix delta(detail::betti_at(h_x, up + 1), buv);
      for (std::size_t k = 0; k < buv; ++k) {
        // Lift to U by zero, take the coboundary there, extend by zero to X.
        const auto lifted = extend_cochain(*uv, *u, p, h_uv.bases[up][k]);
        const auto image = extend_cochain(*u, *x, p + 1, tu.coboundary(p, lifted));
        delta.set_column(k, coords(h_x, up + 1, image, "connecting map in degree " + deg));
      }
      maps.push_back(std::move(delta));
    }
  }
  check_exactness(nodes, maps, r);
  for (const auto& node : nodes) r.lhs.push_back(Rational(node.dim));
  r.notes.push_back("lhs lists the dimensions along the sequence");
  auto list = [](const CohomologyResult& h) {
    std::string out;
    for (auto b : h.betti) out += (out.empty() ? "" : " ") + std::to_string(b);
    return out;
  };
  r.notes.push_back("betti X: " + list(h_x) + "; U: " + list(h_u) + "; V: " + list(h_v) + "; U n V: " + list(h_uv));
  r.seconds = clock.seconds();
  return r;
}

/// Twisted Lefschetz number of a self-map against the classical chain-level
/// trace of the untwisted map.
inline Report verify_lefschetz(const SimplicialMap& f, const WeightCocycle& w, const GaugeFunction& u,
                               const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"lefschetz", "twisted Lefschetz number equals the classical one"};
  r.lhs = {lefschetz_number(f, w, u, ranks)};
  r.rhs = {Rational(oracle::chain_level_lefschetz(*f.source, f.images))};
  detail::compare_degrees(r);
  if (!is_integer(r.lhs[0])) r.fail("Lefschetz number is not an integer");
  r.seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Blow-up at a point, modelled as connected sum with the 9-vertex CP^2

struct BlowupModel {
  ComplexPtr complex;
  WeightCocycle weights;
};

/// Connected sum X4 # cp2_9 along the first top simplices (sorted matching),
/// with w normalized to 1 on the removed simplex and 1 on every new edge.
inline BlowupModel point_blowup_model(const ComplexPtr& x4, const WeightCocycle& w) {
  const Simplex& glue = x4->simplices(4).front();
  const auto [normalized, gauge] = gauge_normalize_on(w, subcomplex(*x4, {glue}));
  auto sum = share(connected_sum(*x4, builtin("cp2_9")));
  std::vector<Rational> weights;
  weights.reserve(sum->count(1));
  for (const auto& e : sum->simplices(1)) {
    const bool old_edge = e[1] < x4->vertex_count();
    weights.push_back(old_edge ? normalized.weight(e[0], e[1]) : Rational(1));
  }
  WeightCocycle extended(sum, std::move(weights));
  const auto diag = check_cocycle(extended);
  if (!diag.ok()) throw GaugeError("extended weight system is not a cocycle: " + diag.issues.front());
  return {sum, std::move(extended)};
}

/// betti(X4 # CP2, extended w)[k] against betti(X4, w)[k] + [k == 2].
inline Report verify_blowup_dims(const ComplexPtr& x4, const WeightCocycle& w, const RankOptions& ranks = {}) {
  detail::Stopwatch clock;
  Report r{"blowup", "betti of the point blow-up equals betti(X) plus one class in degree 2"};
  if (x4->dimension() != 4) throw PreconditionError("blow-up check needs a 4-dimensional complex");
  if (!orientable_certificate(x4)) throw PreconditionError("blow-up check needs a closed orientable 4-manifold");
  const auto model = point_blowup_model(x4, w);
  const auto h = cohomology(x4, w, detail::rank_only(ranks));
  const auto hb = cohomology(model.complex, model.weights, detail::rank_only(ranks));
  r.lhs = detail::as_rationals(hb.betti);
  r.rhs = detail::as_rationals(h.betti);
  if (r.rhs.size() > 2) r.rhs[2] += 1;
  detail::compare_degrees(r);
  r.probabilistic = h.probabilistic || hb.probabilistic;
  r.notes.push_back("point blow-up modelled as connected sum with the 9-vertex CP^2");
  r.seconds = clock.seconds();
  return r;
}

}  // namespace mnc
