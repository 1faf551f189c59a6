#include <catch_amalgamated.hpp>

#include "mnc/builtin.hpp"
#include "mnc/constructions.hpp"
#include "mnc/manifold.hpp"
#include "mnc/spaces.hpp"

using namespace mnc;

namespace {

using F = std::vector<std::size_t>;

long long chi_from_f(const F& f) {
  long long out = 0;
  for (std::size_t p = 0; p < f.size(); ++p) out += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(f[p]);
  return out;
}

std::vector<std::pair<std::string, ComplexPtr>> samples() {
  std::vector<std::pair<std::string, ComplexPtr>> out;
  for (const auto& name : builtin_names()) out.emplace_back(name, share(builtin(name)));
  out.emplace_back("point", share(point()));
  out.emplace_back("disk", named_space("disk"));
  out.emplace_back("circle(5)", share(circle(5)));
  out.emplace_back("s3", share(boundary_sphere(3)));
  return out;
}

}  // namespace

TEST_CASE("validate reports missing faces and unsorted tuples") {
  CHECK(validate(Complex::from_maximal(3, {{0, 1, 2}})).ok());
  const auto missing = Complex::from_raw(3, {{{0}, {1}, {2}}, {{0, 2}, {1, 2}}, {{0, 1, 2}}});
  const auto d = validate(missing);
  REQUIRE_FALSE(d.ok());
  CHECK(d.issues.front().find("[0,1]") != std::string::npos);
  const auto unsorted = Complex::from_raw(2, {{{0}, {1}}, {{1, 0}}});
  CHECK_FALSE(validate(unsorted).ok());
  CHECK_THROWS_AS(Complex::from_maximal(3, {{2, 1}}), InputError);
  CHECK_THROWS_AS(Complex::from_maximal(2, {{0, 2}}), InputError);
}

TEST_CASE("builtin complexes") {
  CHECK(builtin("s1_3").f_vector() == F{3, 3});
  CHECK(builtin("s2_4").f_vector() == F{4, 6, 4});
  CHECK(builtin("t2_7").f_vector() == F{7, 21, 14});
  CHECK(builtin("rp2_6").f_vector() == F{6, 15, 10});
  CHECK(builtin("cp2_9").f_vector() == F{9, 36, 84, 90, 36});
  CHECK(euler_characteristic(builtin("cp2_9")) == 3);
  CHECK(euler_characteristic(builtin("rp2_6")) == 1);
  CHECK(euler_characteristic(builtin("s2_4")) == 2);
  CHECK(euler_characteristic(point()) == 1);
  CHECK_THROWS_AS(builtin("klein"), InputError);
  for (const auto& [name, x] : samples()) {
    INFO(name);
    CHECK(validate(*x).ok());
    CHECK(euler_characteristic(*x) == chi_from_f(x->f_vector()));
  }
}

TEST_CASE("t2_7 and cp2_9 are neighborly") {
  // Every pair of vertices spans an edge in both triangulations.
  CHECK(builtin("t2_7").count(1) == 7 * 6 / 2);
  CHECK(builtin("cp2_9").count(1) == 9 * 8 / 2);
}

TEST_CASE("spheres and circles") {
  CHECK(boundary_sphere(1).f_vector() == F{3, 3});
  CHECK(euler_characteristic(boundary_sphere(2)) == 2);
  CHECK(euler_characteristic(boundary_sphere(3)) == 0);
  CHECK(boundary_sphere(0).f_vector() == F{2});
  CHECK(circle(3).simplices(1) == std::vector<Simplex>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(circle(4).count(1) == 4);
  for (std::size_t k = 3; k <= 10; ++k) CHECK(euler_characteristic(circle(k)) == 0);
  CHECK_THROWS_AS(circle(2), InputError);
}

TEST_CASE("products") {
  auto c = share(circle(3));
  const auto t = product(c, c);
  CHECK(t.complex->f_vector() == F{9, 27, 18});
  CHECK(t.to_a.validate().ok());
  CHECK(t.to_b.validate().ok());

  auto edge = share(Complex::from_maximal(2, {{0, 1}}));
  const auto square = product(edge, edge);
  CHECK(square.complex->count(2) == 2);

  auto pt = share(point());
  for (const auto& [name, x] : samples()) {
    INFO(name);
    const auto px = product(pt, x);
    CHECK(*px.complex == *x);
    CHECK(px.to_b.is_isomorphism());
  }
  const auto all = samples();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (all[i].second->simplex_total() * all[j].second->simplex_total() > 2000) continue;
      const auto p = product(all[i].second, all[j].second);
      INFO(all[i].first << " x " << all[j].first);
      CHECK(validate(*p.complex).ok());
      CHECK(euler_characteristic(*p.complex) == euler_characteristic(*all[i].second) * euler_characteristic(*all[j].second));
    }
  }
  CHECK(torus(4)->f_vector() == F{81, 1215, 4050, 4860, 1944});
}

TEST_CASE("connected sums") {
  const auto s2 = builtin("s2_4");
  const auto t2 = builtin("t2_7");
  CHECK(euler_characteristic(connected_sum(s2, s2)) == 2);
  const auto genus2 = connected_sum(t2, t2);
  CHECK(validate(genus2).ok());
  CHECK(euler_characteristic(genus2) == -2);
  CHECK(is_closed_pseudomanifold(genus2));
  const auto blown = connected_sum(*torus(4), builtin("cp2_9"));
  CHECK(validate(blown).ok());
  CHECK(euler_characteristic(blown) == 1);

  // Vertices of A keep their numbers.
  const auto sum = connected_sum(t2, s2);
  for (const auto& e : t2.simplices(1)) CHECK(sum.contains(e));

  CHECK_THROWS_AS(connected_sum(s2, builtin("s1_3")), InputError);
  CHECK_THROWS_AS(connected_sum(s2, s2, {0, 1}, {0, 1, 2}, {0, 1, 2}), InputError);
  CHECK_THROWS_AS(connected_sum(s2, s2, {0, 1, 2}, {0, 1, 2}, {0, 0, 1}), InputError);
}

TEST_CASE("barycentric subdivision") {
  CHECK(barycentric_subdivision(share(point())).complex->f_vector() == F{1});
  CHECK(barycentric_subdivision(share(Complex::from_maximal(2, {{0, 1}}))).complex->f_vector() == F{3, 2});
  const auto disk = barycentric_subdivision(named_space("disk"));
  CHECK(disk.complex->count(2) == 6);
  CHECK(euler_characteristic(*disk.complex) == 1);
  CHECK(barycentric_subdivision(named_space("s2_4")).complex->vertex_count() == 14);
  for (const auto& [name, x] : samples()) {
    INFO(name);
    const auto sd = barycentric_subdivision(x);
    CHECK(validate(*sd.complex).ok());
    CHECK(sd.carrier.validate().ok());
    CHECK(euler_characteristic(*sd.complex) == euler_characteristic(*x));
  }
}

TEST_CASE("mapping tori") {
  auto pt = share(point());
  const auto loop = mapping_torus(SimplicialMap::identity(pt));
  CHECK(loop.f_vector() == F{3, 3});

  auto c = share(circle(3));
  const auto torus2 = share(mapping_torus(SimplicialMap::identity(c)));
  CHECK(validate(*torus2).ok());
  CHECK(euler_characteristic(*torus2) == 0);
  CHECK(orientable_certificate(torus2).has_value());

  const auto klein = share(mapping_torus({c, c, {0, 2, 1}}));
  CHECK(validate(*klein).ok());
  CHECK(euler_characteristic(*klein) == 0);
  CHECK(is_closed_pseudomanifold(*klein));
  CHECK_FALSE(orientable_certificate(klein).has_value());

  CHECK_THROWS_AS(mapping_torus({c, c, {0, 0, 1}}), InputError);
}

TEST_CASE("cones, suspensions and disjoint unions") {
  const auto c = circle(3);
  CHECK(euler_characteristic(cone(c)) == 1);
  CHECK(euler_characteristic(suspension(c)) == 2);
  CHECK(euler_characteristic(disjoint_union(point(), point())) == 2);
  for (const auto& [name, x] : samples()) {
    INFO(name);
    CHECK(validate(cone(*x)).ok());
    CHECK(euler_characteristic(cone(*x)) == 1);
    CHECK(euler_characteristic(suspension(*x)) == 2 - euler_characteristic(*x));
    CHECK(component_count(disjoint_union(*x, *x)) == 2 * component_count(*x));
  }
}

TEST_CASE("orientation certificates") {
  CHECK(orientable_certificate(share(builtin("s2_4"))).has_value());
  CHECK(orientable_certificate(share(builtin("t2_7"))).has_value());
  CHECK(orientable_certificate(share(builtin("cp2_9"))).has_value());
  CHECK(orientable_certificate(torus(3)).has_value());
  CHECK_FALSE(orientable_certificate(share(builtin("rp2_6"))).has_value());
  CHECK_FALSE(orientable_certificate(named_space("disk")).has_value());
  CHECK_FALSE(orientable_certificate(share(disjoint_union(builtin("s2_4"), builtin("s2_4")))).has_value());

  // Adjacent top simplices induce opposite orientations on their shared ridge.
  const auto x = share(builtin("t2_7"));
  const auto cert = *orientable_certificate(x);
  const auto& tops = x->simplices(2);
  for (std::size_t i = 0; i < tops.size(); ++i) {
    for (std::size_t j = i + 1; j < tops.size(); ++j) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          if (face(tops[i], a) != face(tops[j], b)) continue;
          const int si = cert.orientation[i] * ((a % 2 == 0) ? 1 : -1);
          const int sj = cert.orientation[j] * ((b % 2 == 0) ? 1 : -1);
          CHECK(si == -sj);
        }
      }
    }
  }
}

TEST_CASE("simplicial maps") {
  auto c = share(circle(3));
  CHECK(SimplicialMap{c, c, {1, 2, 0}}.is_isomorphism());
  auto pt = share(point());
  CHECK(SimplicialMap{c, pt, {0, 0, 0}}.validate().ok());
  auto edge = share(Complex::from_maximal(3, {{0, 1}, {1, 2}}));
  CHECK_FALSE(SimplicialMap{c, edge, {0, 1, 2}}.validate().ok());
  const SimplicialMap rot{c, c, {1, 2, 0}};
  CHECK(compose(rot, compose(rot, rot)).images == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("subcomplexes") {
  auto s2 = named_space("s2_4");
  const auto [cap, lid] = sphere_hemispheres(s2);
  CHECK(is_subcomplex(*cap, *s2));
  CHECK(is_subcomplex(*lid, *s2));
  const auto rim = intersection(*cap, *lid);
  CHECK(rim.count(1) == 3);
  CHECK(rim.count(2) == 0);

  auto t2 = named_space("t2_7");
  const auto [u, v] = torus_annuli(t2);
  CHECK(euler_characteristic(*u) == 0);
  CHECK(euler_characteristic(*v) == 0);
  CHECK(component_count(intersection(*u, *v)) == 2);
}
