/**
 * Independent reference computations used to cross-examine the main code
 * paths: dense Gaussian elimination, the Hopf chain-level trace formula, and
 * Betti-polynomial convolution.
 */
#pragma once

#include <set>
#include <vector>

#include "mnc/complex.hpp"
#include "mnc/rational.hpp"

namespace mnc::oracle {

/// Rank by textbook dense row reduction over the rationals.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Classical Lefschetz number of a simplicial self-map by the Hopf trace
/// formula on untwisted simplicial chains: each p-simplex mapped onto itself
/// contributes the sign of the induced vertex permutation.
inline long long chain_level_lefschetz(const Complex& x, const std::vector<Vertex>& images) {
  long long total = 0;
  for (int p = 0; p <= x.dimension(); ++p) {
    long long trace = 0;
    for (const auto& s : x.simplices(p)) {
      std::vector<Vertex> img;
      for (Vertex v : s) img.push_back(images[v]);
      if (std::set<Vertex>(img.begin(), img.end()) != std::set<Vertex>(s.begin(), s.end())) continue;
      int sign = 1;
      for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j) {
          if (img[i] > img[j]) sign = -sign;
        }
      }
      trace += sign;
    }
    total += (p % 2 == 0 ? 1 : -1) * trace;
  }
  return total;
}

/// Coefficients of the product of two Betti polynomials.
inline std::vector<std::size_t> convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::size_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace mnc::oracle
