/**
 * Constructors for test spaces: spheres, circles, staircase products,
 * connected sums, barycentric subdivision, mapping tori, cones, suspensions.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "mnc/complex.hpp"
#include "mnc/manifold.hpp"

namespace mnc {

inline Complex point() { return Complex::from_maximal(1, {{0}}); }

/// Boundary of the (n+1)-simplex; n = 0 gives two points.
inline Complex boundary_sphere(std::size_t n) {
  const std::size_t verts = n + 2;
  std::vector<Simplex> gens;
  for (std::size_t skip = 0; skip < verts; ++skip) {
    Simplex s;
    for (Vertex v = 0; v < verts; ++v) {
      if (v != skip) s.push_back(v);
    }
    gens.push_back(std::move(s));
  }
  return Complex::from_maximal(verts, gens);
}

/// k-vertex cycle 0-1-...-(k-1)-0.
inline Complex circle(std::size_t k) {
  if (k < 3) throw InputError("a circle needs at least 3 vertices");
  std::vector<Simplex> gens;
  for (Vertex i = 0; i + 1 < k; ++i) gens.push_back({i, i + 1});
  gens.push_back({0, static_cast<Vertex>(k - 1)});
  return Complex::from_maximal(k, gens);
}

inline Complex disjoint_union(const Complex& a, const Complex& b) {
  std::vector<Simplex> gens = a.maximal_simplices();
  const auto shift = static_cast<Vertex>(a.vertex_count());
  for (auto s : b.maximal_simplices()) {
    for (auto& v : s) v += shift;
    gens.push_back(std::move(s));
  }
  return Complex::from_maximal(a.vertex_count() + b.vertex_count(), gens, false);
}

/// Cone with apex vertex_count(x).
inline Complex cone(const Complex& x) {
  const auto apex = static_cast<Vertex>(x.vertex_count());
  std::vector<Simplex> gens{{apex}};
  for (auto s : x.maximal_simplices()) {
    s.push_back(apex);
    gens.push_back(std::move(s));
  }
  return Complex::from_maximal(x.vertex_count() + 1, gens, false);
}

/// Unreduced suspension with apexes n and n+1.
inline Complex suspension(const Complex& x) {
  const auto north = static_cast<Vertex>(x.vertex_count());
  const Vertex south = north + 1;
  std::vector<Simplex> gens{{north}, {south}};
  for (const auto& s : x.maximal_simplices()) {
    auto up = s;
    up.push_back(north);
    auto down = s;
    down.push_back(south);
    gens.push_back(std::move(up));
    gens.push_back(std::move(down));
  }
  return Complex::from_maximal(x.vertex_count() + 2, gens, false);
}

// ---------------------------------------------------------------------------
// Staircase products

namespace detail {

// Calls visit(path) for every monotone lattice path from (0,0) to (p,q); the
// path lists (i, j) grid points.
inline void for_each_staircase(std::size_t p, std::size_t q,
                               const std::function<void(const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
  std::vector<std::pair<std::size_t, std::size_t>> path{{0, 0}};
  std::function<void(std::size_t, std::size_t)> step = [&](std::size_t i, std::size_t j) {
    if (i == p && j == q) {
      visit(path);
      return;
    }
    if (i < p) {
      path.emplace_back(i + 1, j);
      step(i + 1, j);
      path.pop_back();
    }
    if (j < q) {
      path.emplace_back(i, j + 1);
      step(i, j + 1);
      path.pop_back();
    }
  };
  step(0, 0);
}

}  // namespace detail

struct ProductResult {
  ComplexPtr complex;
  SimplicialMap to_a;
  SimplicialMap to_b;
};

/// Staircase triangulation of |A| x |B|. Vertex (a, b) has index
/// a * vertex_count(B) + b, so vertices are ordered lexicographically.
inline ProductResult product(const ComplexPtr& a, const ComplexPtr& b) {
  const std::size_t nb = b->vertex_count();
  std::vector<Simplex> gens;
  const auto max_a = a->maximal_simplices();
  const auto max_b = b->maximal_simplices();
  for (const auto& s : max_a) {
    for (const auto& t : max_b) {
      detail::for_each_staircase(s.size() - 1, t.size() - 1, [&](const auto& path) {
        Simplex chain;
        chain.reserve(path.size());
        for (const auto& [i, j] : path) chain.push_back(static_cast<Vertex>(s[i] * nb + t[j]));
        gens.push_back(std::move(chain));
      });
    }
  }
  auto x = share(Complex::from_maximal(a->vertex_count() * nb, gens, false));
  std::vector<Vertex> pa(x->vertex_count());
  std::vector<Vertex> pb(x->vertex_count());
  for (std::size_t v = 0; v < x->vertex_count(); ++v) {
    pa[v] = static_cast<Vertex>(v / nb);
    pb[v] = static_cast<Vertex>(v % nb);
  }
  return {x, {x, a, std::move(pa)}, {x, b, std::move(pb)}};
}

/// Product of `factors` copies of the k-vertex circle, associated to the left.
inline ComplexPtr torus(std::size_t factors, std::size_t k = 3) {
  auto c = share(circle(k));
  ComplexPtr x = c;
  for (std::size_t i = 1; i < factors; ++i) x = product(x, c).complex;
  return x;
}

// ---------------------------------------------------------------------------

/// Removes the interiors of the top simplices sigma_a, sigma_b and glues their
/// boundaries, matching[i] being the vertex of sigma_b glued to sigma_a[i].
/// Vertices of A keep their numbers; the remaining vertices of B follow in
/// increasing order.
inline Complex connected_sum(const Complex& a, const Complex& b, const Simplex& sigma_a, const Simplex& sigma_b,
                             const std::vector<Vertex>& matching) {
  if (a.dimension() != b.dimension()) throw InputError("connected sum of complexes of different dimension");
  const int n = a.dimension();
  if (!is_closed_pseudomanifold(a) || !is_closed_pseudomanifold(b)) {
    throw InputError("connected sum needs closed pseudomanifolds");
  }
  if (static_cast<int>(sigma_a.size()) != n + 1 || !a.contains(sigma_a)) {
    throw InputError("simplex " + to_string(sigma_a) + " is not a top simplex of the first complex");
  }
  if (static_cast<int>(sigma_b.size()) != n + 1 || !b.contains(sigma_b)) {
    throw InputError("simplex " + to_string(sigma_b) + " is not a top simplex of the second complex");
  }
  std::set<Vertex> matched(matching.begin(), matching.end());
  if (matching.size() != sigma_b.size() || matched != std::set<Vertex>(sigma_b.begin(), sigma_b.end())) {
    throw InputError("matching is not a bijection onto the second simplex");
  }

  std::vector<Vertex> relabel(b.vertex_count());
  for (std::size_t i = 0; i < matching.size(); ++i) relabel[matching[i]] = sigma_a[i];
  auto next = static_cast<Vertex>(a.vertex_count());
  for (Vertex v = 0; v < b.vertex_count(); ++v) {
    if (!matched.contains(v)) relabel[v] = next++;
  }

  std::vector<Simplex> gens;
  for (const auto& s : a.simplices(n)) {
    if (s != sigma_a) gens.push_back(s);
  }
  for (const auto& s : b.simplices(n)) {
    if (s == sigma_b) continue;
    Simplex t;
    for (Vertex v : s) t.push_back(relabel[v]);
    std::sort(t.begin(), t.end());
    gens.push_back(std::move(t));
  }
  return Complex::from_maximal(next, gens);
}

/// Connected sum along the lexicographically first top simplices, glued in
/// sorted vertex order.
inline Complex connected_sum(const Complex& a, const Complex& b) {
  const int n = a.dimension();
  if (n < 1 || b.dimension() != n) throw InputError("connected sum of complexes of different dimension");
  const Simplex& sa = a.simplices(n).front();
  const Simplex& sb = b.simplices(n).front();
  return connected_sum(a, b, sa, sb, sb);
}

// ---------------------------------------------------------------------------

struct SubdivisionResult {
  ComplexPtr complex;
  SimplicialMap carrier;              // barycenter -> least vertex of its simplex
  std::vector<Simplex> barycenter_of;  // new vertex -> simplex of the original
};

/// Barycentric subdivision. New vertices are the simplices of x ordered by
/// dimension, then lexicographically.
inline SubdivisionResult barycentric_subdivision(const ComplexPtr& x) {
  std::vector<std::size_t> offset;
  std::vector<Simplex> barycenter_of;
  for (int p = 0; p <= x->dimension(); ++p) {
    offset.push_back(barycenter_of.size());
    for (const auto& s : x->simplices(p)) barycenter_of.push_back(s);
  }
  auto vertex_of = [&](const Simplex& s) {
    return static_cast<Vertex>(offset[s.size() - 1] + *x->index_of(s));
  };
  std::vector<Simplex> gens;
  for (const auto& top : x->maximal_simplices()) {
    Simplex order = top;
    do {
      Simplex chain;
      Simplex prefix;
      for (Vertex v : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        chain.push_back(vertex_of(prefix));
      }
      gens.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  auto sd = share(Complex::from_maximal(barycenter_of.size(), gens));
  std::vector<Vertex> carrier(barycenter_of.size());
  for (std::size_t v = 0; v < carrier.size(); ++v) carrier[v] = barycenter_of[v].front();
  return {sd, {sd, x, std::move(carrier)}, std::move(barycenter_of)};
}

/// Mapping torus of a simplicial automorphism f of F, built from three
/// staircase prism layers F x [l, l+1]; the top copy F x {3} is glued to
/// F x {0} by f. Vertex (x, l) has index l * vertex_count(F) + x.
inline Complex mapping_torus(const SimplicialMap& f) {
  if (!f.source || !f.target || !(*f.source == *f.target)) throw InputError("mapping torus needs a self-map");
  if (!f.is_isomorphism()) throw InputError("mapping torus needs a simplicial automorphism");
  const Complex& fiber = *f.source;
  const std::size_t nf = fiber.vertex_count();
  constexpr std::size_t layers = 3;
  auto index = [&](Vertex x, std::size_t level) {
    return level == layers ? f.images[x] : static_cast<Vertex>(level * nf + x);
  };
  std::vector<Simplex> gens;
  for (const auto& s : fiber.maximal_simplices()) {
    for (std::size_t level = 0; level < layers; ++level) {
      detail::for_each_staircase(s.size() - 1, 1, [&](const auto& path) {
        Simplex chain;
        for (const auto& [i, j] : path) chain.push_back(index(s[i], level + j));
        std::sort(chain.begin(), chain.end());
        gens.push_back(std::move(chain));
      });
    }
  }
  return Complex::from_maximal(layers * nf, gens, false);
}

}  // namespace mnc
