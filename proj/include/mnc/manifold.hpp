/**
 * Closed pseudomanifold checks and orientation certificates.
 */
#pragma once

#include <optional>
#include <queue>
#include <vector>

#include "mnc/complex.hpp"

namespace mnc {

struct OrientedManifoldCertificate {
  ComplexPtr complex;
  int top_dimension = 0;
  std::vector<int> orientation;  // +1 / -1 per top simplex, in complex order
};

namespace detail {

// For each codimension-one simplex, the (top simplex, deleted position) pairs
// containing it.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ridge_incidence(const Complex& x) {
  const int n = x.dimension();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(x.count(n - 1));
  const auto& tops = x.simplices(n);
  for (std::size_t t = 0; t < tops.size(); ++t) {
    for (std::size_t i = 0; i < tops[t].size(); ++i) inc[*x.index_of(face(tops[t], i))].emplace_back(t, i);
  }
  return inc;
}

}  // namespace detail

/// Pure, and every codimension-one simplex lies in exactly two top simplices.
inline bool is_closed_pseudomanifold(const Complex& x) {
  const int n = x.dimension();
  if (n < 1) return false;
  for (const auto& s : x.maximal_simplices()) {
    if (static_cast<int>(s.size()) != n + 1) return false;
  }
  for (const auto& owners : detail::ridge_incidence(x)) {
    if (owners.size() != 2) return false;
  }
  return true;
}

/// Orientation signs for a closed connected orientable pseudomanifold, found by
/// propagating across shared ridges. Empty when any hypothesis fails.
inline std::optional<OrientedManifoldCertificate> orientable_certificate(const ComplexPtr& x) {
  const int n = x->dimension();
  if (n == 0) {
    if (x->count(0) != 1) return std::nullopt;
    return OrientedManifoldCertificate{x, 0, {1}};
  }
  if (!is_closed_pseudomanifold(*x)) return std::nullopt;
  const auto inc = detail::ridge_incidence(*x);
  const auto& tops = x->simplices(n);
  std::vector<int> sign(tops.size(), 0);
  std::queue<std::size_t> work;
  sign[0] = 1;
  work.push(0);
  while (!work.empty()) {
    const std::size_t t = work.front();
    work.pop();
    for (std::size_t i = 0; i < tops[t].size(); ++i) {
      const int induced = sign[t] * (i % 2 == 0 ? 1 : -1);
      for (const auto& [u, j] : inc[*x->index_of(face(tops[t], i))]) {
        if (u == t) continue;
        // The neighbour must induce the opposite orientation on the ridge.
        const int needed = -induced * (j % 2 == 0 ? 1 : -1);
        if (sign[u] == 0) {
          sign[u] = needed;
          work.push(u);
        } else if (sign[u] != needed) {
          return std::nullopt;
        }
      }
    }
  }
  for (int s : sign) {
    if (s == 0) return std::nullopt;  // disconnected
  }
  return OrientedManifoldCertificate{x, n, std::move(sign)};
}

}  // namespace mnc
