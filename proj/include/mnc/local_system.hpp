/**
 * Rank-one weight local systems on simplicial complexes.
 *
 * A WeightCocycle stores one positive rational per edge (i, j), i < j: the
 * transport that carries fiber values at j to fiber values at i. Transport
 * the other way is the reciprocal. The triangle condition
 * w(a,b) * w(b,c) = w(a,c) is the discrete closedness of the underlying
 * 1-form; a system is exact when it is a gauge transform of the trivial one.
 */
#pragma once

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "mnc/complex.hpp"
#include "mnc/constructions.hpp"
#include "mnc/rational.hpp"

namespace mnc {

/// Raised when a gauge cannot be found or does not match.
class GaugeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positive rational per vertex (indexed by vertex number).
struct GaugeFunction {
  ComplexPtr complex;
  std::vector<Rational> value;

  static GaugeFunction constant(const ComplexPtr& x, const Rational& c = 1) {
    return {x, std::vector<Rational>(x->vertex_count(), c)};
  }

  friend bool operator==(const GaugeFunction& a, const GaugeFunction& b) { return a.value == b.value; }
};

class WeightCocycle {
 public:
  WeightCocycle() = default;

  /// Weights listed in the edge order of x. Positivity is enforced; the
  /// triangle condition is checked separately by check_cocycle().
  WeightCocycle(ComplexPtr x, std::vector<Rational> edge_weights)
      : complex_(std::move(x)), weights_(std::move(edge_weights)) {
    if (weights_.size() != complex_->count(1)) throw InputError("one weight per edge is required");
    for (std::size_t e = 0; e < weights_.size(); ++e) {
      if (weights_[e] <= 0) {
        throw InputError("weight of edge " + to_string(complex_->simplices(1)[e]) + " is not positive");
      }
    }
  }

  static WeightCocycle trivial(const ComplexPtr& x) {
    return WeightCocycle(x, std::vector<Rational>(x->count(1), Rational(1)));
  }

  /// Explicit weights keyed by edge; missing edges are an error.
  static WeightCocycle from_map(const ComplexPtr& x, const std::map<Simplex, Rational>& weights) {
    std::vector<Rational> w;
    for (const auto& e : x->simplices(1)) {
      auto it = weights.find(e);
      if (it == weights.end()) throw InputError("missing weight for edge " + to_string(e));
      w.push_back(it->second);
    }
    for (const auto& [e, v] : weights) {
      if (!x->contains(e) || e.size() != 2) throw InputError("weight given for non-edge " + to_string(e));
    }
    return WeightCocycle(x, std::move(w));
  }

  const ComplexPtr& complex() const { return complex_; }
  const std::vector<Rational>& edge_weights() const { return weights_; }

  /// w(i, j) for an edge with i < j.
  const Rational& weight(Vertex i, Vertex j) const {
    auto idx = complex_->index_of({i, j});
    if (!idx) throw InputError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not an edge");
    return weights_[*idx];
  }

  /// Transport carrying the fiber at `from` into the fiber at `to`; 1 when
  /// the vertices coincide.
  Rational transport(Vertex to, Vertex from) const {
    if (to == from) return 1;
    if (to < from) return weight(to, from);
    return Rational(1) / weight(from, to);
  }

  bool is_trivial() const {
    for (const auto& w : weights_) {
      if (w != 1) return false;
    }
    return true;
  }

  friend bool operator==(const WeightCocycle& a, const WeightCocycle& b) {
    return a.weights_ == b.weights_ && *a.complex_ == *b.complex_;
  }

 private:
  ComplexPtr complex_;
  std::vector<Rational> weights_;
};

/// Lists every 2-simplex violating the triangle condition.
inline Diagnostics check_cocycle(const WeightCocycle& w) {
  Diagnostics d;
  const auto& x = *w.complex();
  if (w.edge_weights().size() != x.count(1)) {
    d.issues.push_back("weight table does not cover the edges");
    return d;
  }
  for (const auto& t : x.simplices(2)) {
    if (w.weight(t[0], t[1]) * w.weight(t[1], t[2]) != w.weight(t[0], t[2])) {
      d.issues.push_back("triangle " + to_string(t) + " violates the cocycle condition");
    }
  }
  return d;
}

/// weight'(i,j) = u(i)^-1 * weight(i,j) * u(j)
inline WeightCocycle gauge_transform(const WeightCocycle& w, const GaugeFunction& u) {
  const auto& edges = w.complex()->simplices(1);
  std::vector<Rational> out(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[e] = w.edge_weights()[e] * u.value.at(edges[e][1]) / u.value.at(edges[e][0]);
  }
  return WeightCocycle(w.complex(), std::move(out));
}

namespace detail {

// Breadth-first gauge over the component of `root` in the given adjacency,
// with weight(i,j) = u(i)^-1 u(j) along the tree edges.
inline void propagate_gauge(const WeightCocycle& w, const std::vector<std::vector<Vertex>>& adjacency, Vertex root,
                            std::vector<std::optional<Rational>>& u) {
  std::queue<Vertex> work;
  u[root] = Rational(1);
  work.push(root);
  while (!work.empty()) {
    const Vertex a = work.front();
    work.pop();
    for (Vertex b : adjacency[a]) {
      if (u[b]) continue;
      u[b] = *u[a] * w.transport(a, b);
      work.push(b);
    }
  }
}

inline std::vector<std::vector<Vertex>> adjacency(const Complex& x) {
  std::vector<std::vector<Vertex>> adj(x.vertex_count());
  for (const auto& e : x.simplices(1)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  return adj;
}

}  // namespace detail

/// A gauge u with weight(i,j) = u(i)^-1 u(j) on every edge, when one exists.
/// The gauge is 1 at the lowest vertex of each component.
inline std::optional<GaugeFunction> is_exact(const WeightCocycle& w) {
  const auto& x = *w.complex();
  const auto adj = detail::adjacency(x);
  std::vector<std::optional<Rational>> u(x.vertex_count());
  for (const auto& v : x.simplices(0)) {
    if (!u[v[0]]) detail::propagate_gauge(w, adj, v[0], u);
  }
  for (const auto& e : x.simplices(1)) {
    if (w.weight(e[0], e[1]) * *u[e[0]] != *u[e[1]]) return std::nullopt;
  }
  GaugeFunction g = GaugeFunction::constant(w.complex());
  for (std::size_t v = 0; v < u.size(); ++v) {
    if (u[v]) g.value[v] = *u[v];
  }
  return g;
}

/// Number of connected components on which w is exact.
inline std::size_t exact_component_count(const WeightCocycle& w) {
  const auto& x = *w.complex();
  const auto labels = component_labels(x);
  const auto adj = detail::adjacency(x);
  std::vector<std::optional<Rational>> u(x.vertex_count());
  for (const auto& v : x.simplices(0)) {
    if (!u[v[0]]) detail::propagate_gauge(w, adj, v[0], u);
  }
  const std::size_t n = component_count(x);
  std::vector<bool> exact(n, true);
  for (const auto& e : x.simplices(1)) {
    if (w.weight(e[0], e[1]) * *u[e[0]] != *u[e[1]]) exact[static_cast<std::size_t>(labels[e[0]])] = false;
  }
  return static_cast<std::size_t>(std::count(exact.begin(), exact.end(), true));
}

/// A gauge g such that g(w) := gauge_transform(w, g) is 1 on every edge of the
/// subcomplex s, together with that transformed system. Fails, naming an
/// edge, when s is disconnected or w has nontrivial holonomy inside s.
inline std::pair<WeightCocycle, GaugeFunction> gauge_normalize_on(const WeightCocycle& w, const Complex& s) {
  const auto& x = *w.complex();
  if (!is_subcomplex(s, x)) throw InputError("normalization region is not a subcomplex");
  GaugeFunction g = GaugeFunction::constant(w.complex());
  if (s.count(0) == 0) return {w, g};
  const auto adj = detail::adjacency(s);
  std::vector<std::optional<Rational>> u(x.vertex_count());
  detail::propagate_gauge(w, adj, s.simplices(0).front()[0], u);
  for (const auto& v : s.simplices(0)) {
    if (!u[v[0]]) throw GaugeError("normalization region is disconnected at vertex " + std::to_string(v[0]));
  }
  for (const auto& e : s.simplices(1)) {
    if (w.weight(e[0], e[1]) * *u[e[0]] != *u[e[1]]) {
      throw GaugeError("loop through edge " + to_string(e) + " has nontrivial holonomy");
    }
  }
  for (const auto& v : s.simplices(0)) g.value[v[0]] = Rational(1) / *u[v[0]];
  return {gauge_transform(w, g), g};
}

/// weight(i,j) = t^m(i,j) for an integer 1-cocycle m.
inline WeightCocycle from_integral_class(const ComplexPtr& x, const std::vector<long long>& m, const Rational& t) {
  if (m.size() != x->count(1)) throw InputError("one integer per edge is required");
  if (t <= 0) throw InputError("base must be positive");
  for (const auto& tri : x->simplices(2)) {
    const long long ab = m[*x->index_of({tri[0], tri[1]})];
    const long long bc = m[*x->index_of({tri[1], tri[2]})];
    const long long ac = m[*x->index_of({tri[0], tri[2]})];
    if (ab + bc != ac) throw InputError("integral class violates the additive condition on " + to_string(tri));
  }
  std::vector<Rational> w;
  w.reserve(m.size());
  for (long long k : m) w.push_back(pow(t, k));
  return WeightCocycle(x, std::move(w));
}

inline void require_same_complex(const WeightCocycle& a, const WeightCocycle& b) {
  if (a.complex() != b.complex() && !(*a.complex() == *b.complex())) {
    throw InputError("weight systems live on different complexes");
  }
}

inline WeightCocycle tensor(const WeightCocycle& a, const WeightCocycle& b) {
  require_same_complex(a, b);
  std::vector<Rational> w(a.edge_weights().size());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = a.edge_weights()[e] * b.edge_weights()[e];
  return WeightCocycle(a.complex(), std::move(w));
}

inline WeightCocycle inverse(const WeightCocycle& a) {
  std::vector<Rational> w(a.edge_weights().size());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = Rational(1) / a.edge_weights()[e];
  return WeightCocycle(a.complex(), std::move(w));
}

/// weight'(i,j) = transport(f(i) <- f(j)); collapsed edges get weight 1.
inline WeightCocycle pullback(const SimplicialMap& f, const WeightCocycle& w) {
  if (!(*f.target == *w.complex())) throw InputError("weight system is not on the target of the map");
  const auto& edges = f.source->simplices(1);
  std::vector<Rational> out(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[e] = w.transport(f.images[edges[e][0]], f.images[edges[e][1]]);
  }
  return WeightCocycle(f.source, std::move(out));
}

/// Restriction to a subcomplex sharing the vertex numbering.
inline WeightCocycle restrict_to(const WeightCocycle& w, const ComplexPtr& sub) {
  std::vector<Rational> out;
  out.reserve(sub->count(1));
  for (const auto& e : sub->simplices(1)) out.push_back(w.weight(e[0], e[1]));
  return WeightCocycle(sub, std::move(out));
}

/// Ordered product of transports along the loop, each step carrying the fiber
/// at loop[k] to the fiber at loop[k+1].
inline Rational holonomy(const WeightCocycle& w, const std::vector<Vertex>& loop) {
  if (loop.empty() || loop.front() != loop.back()) throw InputError("loop must start and end at the same vertex");
  Rational h = 1;
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
    const Vertex a = loop[k];
    const Vertex b = loop[k + 1];
    if (a == b) continue;
    if (!w.complex()->contains({std::min(a, b), std::max(a, b)})) {
      throw InputError("loop step " + std::to_string(a) + "-" + std::to_string(b) + " is not an edge");
    }
    h *= w.transport(b, a);
  }
  return h;
}

/// A gauge u with pullback(f, w_target) == gauge_transform(w_source, u), when
/// one exists.
inline std::optional<GaugeFunction> find_gauge(const WeightCocycle& w_source, const WeightCocycle& pulled) {
  require_same_complex(w_source, pulled);
  return is_exact(tensor(pulled, inverse(w_source)));
}

/// pr_A^* wA (x) pr_B^* wB on the staircase product.
inline WeightCocycle product_system(const ProductResult& prod, const WeightCocycle& wa, const WeightCocycle& wb) {
  return tensor(pullback(prod.to_a, wa), pullback(prod.to_b, wb));
}

}  // namespace mnc
