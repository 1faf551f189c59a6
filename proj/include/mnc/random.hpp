/**
 * Seeded generators for weight systems, gauges and small complexes, plus the
 * integral 1-cocycles that span untwisted H^1.
 */
#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "mnc/cohomology.hpp"
#include "mnc/complex.hpp"
#include "mnc/local_system.hpp"

namespace mnc {

/// Integer 1-cocycles whose classes form a basis of H^1(X; Q): the rational
/// cohomology representatives scaled to clear denominators.
inline std::vector<std::vector<long long>> integral_class_basis(const ComplexPtr& x) {
  std::vector<std::vector<long long>> out;
  if (x->dimension() < 1) return out;
  const auto trivial = WeightCocycle::trivial(x);
  const QuotientBasis h1(coboundary_matrix(*x, trivial, 0), coboundary_matrix(*x, trivial, 1));
  for (const auto& rep : h1.representatives()) {
    Integer scale = 1;
    for (const auto& q : rep) scale = boost::multiprecision::lcm(scale, Integer(boost::multiprecision::denominator(q)));
    std::vector<long long> m;
    for (const auto& q : rep) {
      const Rational scaled = q * scale;
      m.push_back(boost::multiprecision::numerator(scaled).convert_to<long long>());
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Holonomy-t system on circle(k): weight t on the closing edge (0, k-1), so
/// the loop 0 -> 1 -> ... -> k-1 -> 0 has holonomy t.
inline WeightCocycle circle_character(const ComplexPtr& circle_complex, const Rational& t) {
  std::vector<Rational> w(circle_complex->count(1), Rational(1));
  const auto k = static_cast<Vertex>(circle_complex->vertex_count());
  w[*circle_complex->index_of({0, k - 1})] = t;
  return WeightCocycle(circle_complex, std::move(w));
}

/// t raised to the given integral class.
inline WeightCocycle character(const ComplexPtr& x, const std::vector<long long>& integral_class, const Rational& t) {
  return from_integral_class(x, integral_class, t);
}

inline Rational random_positive_rational(std::mt19937_64& rng, int max_part = 5) {
  std::uniform_int_distribution<int> d(1, max_part);
  const int p = d(rng);
  const int q = d(rng);
  return Rational(p, q);
}

inline GaugeFunction random_gauge(const ComplexPtr& x, std::mt19937_64& rng) {
  GaugeFunction u = GaugeFunction::constant(x);
  for (auto& v : u.value) v = random_positive_rational(rng);
  return u;
}

/// A random product of characters t_i^{k_i m_i} over the integral class basis,
/// followed by a random gauge. With `classes` empty the result is exact.
inline WeightCocycle random_weights(const ComplexPtr& x, const std::vector<std::vector<long long>>& classes,
                                    std::mt19937_64& rng) {
  static const Rational bases[] = {Rational(2), Rational(3), Rational(1, 2), Rational(3, 2), Rational(5)};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> power(-1, 2);
  WeightCocycle w = WeightCocycle::trivial(x);
  for (const auto& m : classes) {
    const int k = power(rng);
    if (k == 0) continue;
    std::vector<long long> scaled(m);
    for (auto& v : scaled) v *= k;
    w = tensor(w, from_integral_class(x, scaled, bases[pick(rng)]));
  }
  return gauge_transform(w, random_gauge(x, rng));
}

inline WeightCocycle random_weights(const ComplexPtr& x, std::mt19937_64& rng) {
  return random_weights(x, integral_class_basis(x), rng);
}

/// A connected complex on 5..10 vertices: a random spanning tree plus random
/// extra edges and triangles (faces closed).
inline Complex random_connected_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(5, 10);
  const auto n = static_cast<Vertex>(size(rng));
  std::vector<Simplex> gens;
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> parent(0, v - 1);
    gens.push_back({parent(rng), v});
  }
  std::uniform_int_distribution<Vertex> any(0, n - 1);
  std::uniform_int_distribution<int> extras(0, static_cast<int>(n));
  const int edges = extras(rng);
  for (int i = 0; i < edges; ++i) {
    Vertex a = any(rng);
    Vertex b = any(rng);
    if (a == b) continue;
    gens.push_back({std::min(a, b), std::max(a, b)});
  }
  const int triangles = extras(rng);
  for (int i = 0; i < triangles; ++i) {
    Simplex t{any(rng), any(rng), any(rng)};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) continue;
    gens.push_back(std::move(t));
  }
  return Complex::from_maximal(n, gens);
}

}  // namespace mnc
