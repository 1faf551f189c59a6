/**
 * Named spaces and the fixed test configurations shared by the acceptance
 * suite and the command-line tool.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mnc/builtin.hpp"
#include "mnc/constructions.hpp"
#include "mnc/local_system.hpp"

namespace mnc {

inline const std::vector<std::string>& named_space_names() {
  static const std::vector<std::string> names{"s1_3", "s2_4", "t2_7", "rp2_6", "cp2_9",
                                              "point", "disk", "t3", "t4"};
  return names;
}

/// Builtins plus a few constructed spaces: the point, the full 2-simplex and
/// the 3- and 4-fold products of s1_3.
inline ComplexPtr named_space(const std::string& name) {
  if (name == "point") return share(point());
  if (name == "disk") return share(Complex::from_maximal(3, {{0, 1, 2}}));
  if (name == "t3") return torus(3);
  if (name == "t4") return torus(4);
  return share(builtin(name));
}

/// Complexes used by the randomized invariance checks.
inline std::vector<std::pair<std::string, ComplexPtr>> suite_complexes() {
  std::vector<std::pair<std::string, ComplexPtr>> out;
  for (const char* name : {"point", "disk", "s1_3", "s2_4", "t2_7", "rp2_6", "cp2_9"}) {
    out.emplace_back(name, named_space(name));
  }
  out.emplace_back("circle(5)", share(circle(5)));
  out.emplace_back("s1_3 x s1_3", torus(2));
  out.emplace_back("s1_3 + point", share(disjoint_union(circle(3), point())));
  return out;
}

/// Projection of the left-associated product torus(n, k) onto factor i.
inline SimplicialMap torus_projection(const ComplexPtr& t, std::size_t factors, std::size_t i, std::size_t k = 3) {
  auto c = share(circle(k));
  std::size_t stride = 1;
  for (std::size_t f = i + 1; f < factors; ++f) stride *= k;
  std::vector<Vertex> images(t->vertex_count());
  for (std::size_t v = 0; v < images.size(); ++v) images[v] = static_cast<Vertex>((v / stride) % k);
  return {t, c, std::move(images)};
}

/// Two cones covering s2_4: the star of vertex 0 and the opposite triangle.
inline std::pair<ComplexPtr, ComplexPtr> sphere_hemispheres(const ComplexPtr& s2) {
  return {share(subcomplex(*s2, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}})), share(subcomplex(*s2, {{1, 2, 3}}))};
}

/// Two annuli covering t2_7 and meeting in two disjoint circles.
inline std::pair<ComplexPtr, ComplexPtr> torus_annuli(const ComplexPtr& t2) {
  return {share(subcomplex(*t2, {{0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {0, 2, 6}, {1, 2, 4}, {1, 2, 6}, {1, 3, 4}})),
          share(subcomplex(*t2, {{0, 4, 5}, {0, 4, 6}, {1, 5, 6}, {2, 3, 5}, {2, 4, 5}, {3, 4, 6}, {3, 5, 6}}))};
}

}  // namespace mnc
