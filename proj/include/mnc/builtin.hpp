/**
 * Standard small triangulations shipped as static data.
 *
 *   s1_3   3-vertex circle
 *   s2_4   boundary of the tetrahedron
 *   t2_7   Moebius' 7-vertex torus
 *   rp2_6  6-vertex real projective plane
 *   cp2_9  Kuehnel's 9-vertex complex projective plane
 */
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mnc/complex.hpp"
#include "mnc/constructions.hpp"

namespace mnc {

namespace detail {

// 1-based facet list of the 9-vertex CP^2, written in the orbit form of its
// Z/3 x Z/3 symmetry.
inline constexpr std::array<std::array<Vertex, 5>, 36> kCp2Facets{{
    {1, 2, 4, 5, 6}, {2, 3, 5, 6, 4}, {3, 1, 6, 4, 5}, {1, 2, 4, 5, 9}, {2, 3, 5, 6, 7}, {3, 1, 6, 4, 8},
    {2, 3, 6, 4, 9}, {3, 1, 4, 5, 7}, {1, 2, 5, 6, 8}, {3, 1, 5, 6, 9}, {1, 2, 6, 4, 7}, {2, 3, 4, 5, 8},
    {4, 5, 7, 8, 9}, {5, 6, 8, 9, 7}, {6, 4, 9, 7, 8}, {4, 5, 7, 8, 3}, {5, 6, 8, 9, 1}, {6, 4, 9, 7, 2},
    {5, 6, 9, 7, 3}, {6, 4, 7, 8, 1}, {4, 5, 8, 9, 2}, {6, 4, 8, 9, 3}, {4, 5, 9, 7, 1}, {5, 6, 7, 8, 2},
    {7, 8, 1, 2, 3}, {8, 9, 2, 3, 1}, {9, 7, 3, 1, 2}, {7, 8, 1, 2, 6}, {8, 9, 2, 3, 4}, {9, 7, 3, 1, 5},
    {8, 9, 3, 1, 6}, {9, 7, 1, 2, 4}, {7, 8, 2, 3, 5}, {9, 7, 2, 3, 6}, {7, 8, 3, 1, 4}, {8, 9, 1, 2, 5},
}};

inline Complex cp2_9() {
  std::vector<Simplex> gens;
  for (const auto& facet : kCp2Facets) {
    Simplex s;
    for (Vertex v : facet) s.push_back(v - 1);
    std::sort(s.begin(), s.end());
    gens.push_back(std::move(s));
  }
  return Complex::from_maximal(9, gens);
}

inline Complex t2_7() {
  std::vector<Simplex> gens;
  for (Vertex i = 0; i < 7; ++i) {
    for (Vertex step : {1U, 2U}) {
      Simplex s{i, (i + step) % 7, (i + 3) % 7};
      std::sort(s.begin(), s.end());
      gens.push_back(std::move(s));
    }
  }
  return Complex::from_maximal(7, gens);
}

inline Complex rp2_6() {
  return Complex::from_maximal(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                   {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"s1_3", "s2_4", "t2_7", "rp2_6", "cp2_9"};
  return names;
}

inline Complex builtin(std::string_view name) {
  if (name == "s1_3") return circle(3);
  if (name == "s2_4") return boundary_sphere(2);
  if (name == "t2_7") return detail::t2_7();
  if (name == "rp2_6") return detail::rp2_6();
  if (name == "cp2_9") return detail::cp2_9();
  throw InputError("unknown builtin complex '" + std::string(name) + "'");
}

}  // namespace mnc
