/**
 * Finite ordered simplicial complexes and simplicial maps.
 *
 * Vertices are the integers 0..vertex_count-1 and that integer order is the
 * single orientation convention used everywhere: simplices are strictly
 * increasing vertex tuples, coboundary signs follow face positions, product
 * staircases and cup products read vertices in this order.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mnc/rational.hpp"

namespace mnc {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;

/// Human readable form "[0,1,3]".
inline std::string to_string(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

/// The face obtained by deleting position i.
inline Simplex face(const Simplex& s, std::size_t i) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != i) f.push_back(s[k]);
  }
  return f;
}

struct Diagnostics {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

class Complex {
 public:
  Complex() = default;

  /// Face closure of the given simplices. Every index 0..vertex_count-1 is a
  /// vertex when `all_vertices` is set; otherwise only vertices occurring in
  /// some listed simplex are present (used for subcomplexes).
  static Complex from_maximal(std::size_t vertex_count, const std::vector<Simplex>& generators,
                              bool all_vertices = true) {
    std::vector<std::set<Simplex>> levels;
    auto insert = [&](const Simplex& s) {
      const std::size_t d = s.size() - 1;
      if (levels.size() <= d) levels.resize(d + 1);
      levels[d].insert(s);
    };
    for (const auto& g : generators) {
      if (g.empty()) throw InputError("empty simplex");
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] >= vertex_count) {
          throw InputError("simplex " + to_string(g) + " has vertex out of range");
        }
        if (i > 0 && g[i - 1] >= g[i]) {
          throw InputError("simplex " + to_string(g) + " is not strictly increasing");
        }
      }
      insert(g);
    }
    if (all_vertices) {
      for (Vertex v = 0; v < vertex_count; ++v) insert({v});
    }
    for (std::size_t d = levels.size(); d-- > 1;) {
      for (const auto& s : levels[d]) {
        for (std::size_t i = 0; i < s.size(); ++i) levels[d - 1].insert(face(s, i));
      }
    }
    Complex x;
    x.vertex_count_ = vertex_count;
    for (const auto& level : levels) x.simplices_.emplace_back(level.begin(), level.end());
    x.trim();
    return x;
  }

  /// Unchecked construction from per-dimension lists; run validate() on the
  /// result. Lists are sorted but otherwise kept as given.
  static Complex from_raw(std::size_t vertex_count, std::vector<std::vector<Simplex>> by_dimension) {
    Complex x;
    x.vertex_count_ = vertex_count;
    x.simplices_ = std::move(by_dimension);
    for (auto& level : x.simplices_) std::sort(level.begin(), level.end());
    x.trim();
    return x;
  }

  std::size_t vertex_count() const { return vertex_count_; }

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }

  const std::vector<Simplex>& simplices(int p) const {
    static const std::vector<Simplex> none;
    if (p < 0 || p > dimension()) return none;
    return simplices_[static_cast<std::size_t>(p)];
  }

  std::size_t count(int p) const { return simplices(p).size(); }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const auto& level = simplices(static_cast<int>(s.size()) - 1);
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
  }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& level : simplices_) f.push_back(level.size());
    return f;
  }

  /// Simplices that are not a proper face of another simplex.
  std::vector<Simplex> maximal_simplices() const {
    std::vector<Simplex> out;
    for (int p = 0; p <= dimension(); ++p) {
      std::set<Simplex> covered;
      for (const auto& s : simplices(p + 1)) {
        for (std::size_t i = 0; i < s.size(); ++i) covered.insert(face(s, i));
      }
      for (const auto& s : simplices(p)) {
        if (!covered.contains(s)) out.push_back(s);
      }
    }
    return out;
  }

  std::size_t simplex_total() const {
    std::size_t n = 0;
    for (const auto& level : simplices_) n += level.size();
    return n;
  }

  friend bool operator==(const Complex&, const Complex&) = default;

 private:
  void trim() {
    while (!simplices_.empty() && simplices_.back().empty()) simplices_.pop_back();
  }

  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
};

using ComplexPtr = std::shared_ptr<const Complex>;

inline ComplexPtr share(Complex x) { return std::make_shared<const Complex>(std::move(x)); }

/// Reports every violated invariant: range, ordering, arity, face closure.
inline Diagnostics validate(const Complex& x) {
  Diagnostics d;
  for (int p = 0; p <= x.dimension(); ++p) {
    const auto& level = x.simplices(p);
    for (std::size_t k = 0; k < level.size(); ++k) {
      const auto& s = level[k];
      if (k > 0 && level[k - 1] == s) d.issues.push_back("duplicate simplex " + to_string(s));
      if (s.size() != static_cast<std::size_t>(p) + 1) {
        d.issues.push_back("simplex " + to_string(s) + " stored in dimension " + std::to_string(p));
        continue;
      }
      bool ordered = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= x.vertex_count()) d.issues.push_back("simplex " + to_string(s) + " has vertex out of range");
        if (i > 0 && s[i - 1] >= s[i]) ordered = false;
      }
      if (!ordered) d.issues.push_back("simplex " + to_string(s) + " is not strictly increasing");
      if (p == 0) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = face(s, i);
        if (!x.contains(f)) d.issues.push_back("missing face " + to_string(f) + " of " + to_string(s));
      }
    }
  }
  return d;
}

inline long long euler_characteristic(const Complex& x) {
  long long chi = 0;
  for (int p = 0; p <= x.dimension(); ++p) {
    chi += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(x.count(p));
  }
  return chi;
}

/// Connected components of the 1-skeleton, as a label per present vertex
/// (absent vertex indices get label -1). Labels are numbered by lowest vertex.
inline std::vector<long> component_labels(const Complex& x) {
  std::vector<long> parent(x.vertex_count(), -1);
  for (const auto& v : x.simplices(0)) parent[v[0]] = v[0];
  auto find = [&](long v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : x.simplices(1)) {
    long a = find(e[0]);
    long b = find(e[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<long> label(x.vertex_count(), -1);
  std::map<long, long> ids;
  for (const auto& v : x.simplices(0)) {
    long root = find(v[0]);
    auto [it, fresh] = ids.emplace(root, static_cast<long>(ids.size()));
    label[v[0]] = it->second;
  }
  return label;
}

inline std::size_t component_count(const Complex& x) {
  long top = -1;
  for (long l : component_labels(x)) top = std::max(top, l);
  return static_cast<std::size_t>(top + 1);
}

/// True when every simplex of `sub` is a simplex of `ambient` and they share
/// the vertex numbering.
inline bool is_subcomplex(const Complex& sub, const Complex& ambient) {
  if (sub.vertex_count() != ambient.vertex_count()) return false;
  for (int p = 0; p <= sub.dimension(); ++p) {
    for (const auto& s : sub.simplices(p)) {
      if (!ambient.contains(s)) return false;
    }
  }
  return true;
}

/// The subcomplex of `ambient` generated by the given simplices.
inline Complex subcomplex(const Complex& ambient, const std::vector<Simplex>& generators) {
  Complex sub = Complex::from_maximal(ambient.vertex_count(), generators, false);
  if (!is_subcomplex(sub, ambient)) throw InputError("generators are not simplices of the ambient complex");
  return sub;
}

/// Common simplices of two subcomplexes of the same ambient numbering.
inline Complex intersection(const Complex& a, const Complex& b) {
  std::vector<std::vector<Simplex>> levels;
  for (int p = 0; p <= std::min(a.dimension(), b.dimension()); ++p) {
    std::vector<Simplex> level;
    std::set_intersection(a.simplices(p).begin(), a.simplices(p).end(), b.simplices(p).begin(),
                          b.simplices(p).end(), std::back_inserter(level));
    levels.push_back(std::move(level));
  }
  return Complex::from_raw(a.vertex_count(), std::move(levels));
}

/// Indices in `ambient` of the p-simplices of `sub`, in the order of `sub`.
inline std::vector<std::size_t> inclusion_indices(const Complex& sub, const Complex& ambient, int p) {
  std::vector<std::size_t> out;
  for (const auto& s : sub.simplices(p)) {
    auto idx = ambient.index_of(s);
    if (!idx) throw InputError("simplex " + to_string(s) + " is not in the ambient complex");
    out.push_back(*idx);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// A vertex map that carries simplices to simplices.
struct SimplicialMap {
  ComplexPtr source;
  ComplexPtr target;
  std::vector<Vertex> images;  // indexed by source vertex

  /// Sorted, deduplicated image of a source simplex.
  Simplex apply(const Simplex& s) const {
    Simplex out;
    out.reserve(s.size());
    for (Vertex v : s) out.push_back(images.at(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Diagnostics validate() const {
    Diagnostics d;
    if (!source || !target) {
      d.issues.push_back("map without source or target");
      return d;
    }
    if (images.size() != source->vertex_count()) {
      d.issues.push_back("vertex image table has wrong length");
      return d;
    }
    for (const auto& v : source->simplices(0)) {
      if (images[v[0]] >= target->vertex_count()) {
        d.issues.push_back("vertex " + std::to_string(v[0]) + " maps out of range");
      }
    }
    if (!d.ok()) return d;
    for (int p = 0; p <= source->dimension(); ++p) {
      for (const auto& s : source->simplices(p)) {
        Simplex img = apply(s);
        if (!target->contains(img)) {
          d.issues.push_back("image " + to_string(img) + " of " + to_string(s) + " is not a simplex");
        }
      }
    }
    return d;
  }

  /// True when the map is a simplicial isomorphism onto its target.
  bool is_isomorphism() const {
    if (!validate().ok() || source->f_vector() != target->f_vector()) return false;
    std::set<Vertex> seen;
    for (const auto& v : source->simplices(0)) seen.insert(images[v[0]]);
    if (seen.size() != source->count(0)) return false;
    for (int p = 0; p <= source->dimension(); ++p) {
      std::set<Simplex> hit;
      for (const auto& s : source->simplices(p)) hit.insert(apply(s));
      if (hit.size() != source->count(p)) return false;
    }
    return true;
  }

  static SimplicialMap identity(const ComplexPtr& x) {
    std::vector<Vertex> img(x->vertex_count());
    std::iota(img.begin(), img.end(), Vertex{0});
    return {x, x, std::move(img)};
  }
};

/// g after f.
inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target != g.source && !(f.target && g.source && *f.target == *g.source)) {
    throw InputError("maps are not composable");
  }
  std::vector<Vertex> img(f.images.size());
  for (std::size_t v = 0; v < img.size(); ++v) img[v] = g.images.at(f.images[v]);
  return {f.source, g.target, std::move(img)};
}

}  // namespace mnc
