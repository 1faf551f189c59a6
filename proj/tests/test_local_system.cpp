#include <random>

#include <catch_amalgamated.hpp>

#include "mnc/builtin.hpp"
#include "mnc/local_system.hpp"
#include "mnc/random.hpp"
#include "mnc/spaces.hpp"

using namespace mnc;

namespace {

WeightCocycle disk_weights(const Rational& w01, const Rational& w12, const Rational& w02) {
  auto disk = named_space("disk");
  return WeightCocycle::from_map(disk, {{{0, 1}, w01}, {{1, 2}, w12}, {{0, 2}, w02}});
}

/// Loops through a few fundamental cycles of t2_7 and the circle.
std::vector<std::vector<Vertex>> torus_loops() {
  return {{0, 1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5, 0}, {0, 3, 6, 2, 5, 1, 4, 0}, {0, 1, 3, 0}};
}

}  // namespace

TEST_CASE("cocycle condition") {
  auto t2 = named_space("t2_7");
  CHECK(check_cocycle(WeightCocycle::trivial(t2)).ok());
  CHECK(check_cocycle(disk_weights(2, 3, 6)).ok());
  const auto bad = check_cocycle(disk_weights(2, 3, 5));
  REQUIRE(bad.issues.size() == 1);
  CHECK(bad.issues.front().find("[0,1,2]") != std::string::npos);
  CHECK_THROWS_AS(disk_weights(2, 0, 6), InputError);
  CHECK_THROWS_AS(WeightCocycle::from_map(named_space("disk"), {{{0, 1}, 1}}), InputError);
}

TEST_CASE("transport and holonomy") {
  auto c = share(circle(3));
  const auto w = WeightCocycle::from_map(c, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 2}});
  CHECK(w.transport(0, 2) == 2);
  CHECK(w.transport(2, 0) == Rational(1, 2));
  CHECK(w.transport(1, 1) == 1);
  CHECK(holonomy(w, {0}) == 1);
  CHECK(holonomy(w, {0, 1, 2, 0}) == 2);
  CHECK(holonomy(w, {0, 2, 1, 0}) == Rational(1, 2));
  CHECK(holonomy(circle_character(c, 2), {0, 1, 2, 0}) == 2);
  CHECK_THROWS_AS(holonomy(w, {0, 1, 0, 2}), InputError);  // does not close up
  auto path = share(Complex::from_maximal(3, {{0, 1}, {1, 2}}));
  CHECK_THROWS_AS(holonomy(WeightCocycle::trivial(path), {0, 2, 1, 0}), InputError);
}

TEST_CASE("exactness") {
  auto c = share(circle(3));
  const auto trivial = is_exact(WeightCocycle::trivial(c));
  REQUIRE(trivial);
  for (const auto& v : trivial->value) CHECK(v == 1);
  CHECK_FALSE(is_exact(circle_character(c, 2)));

  std::mt19937_64 rng(3);
  for (const auto& [name, x] : suite_complexes()) {
    INFO(name);
    const auto u = random_gauge(x, rng);
    const auto w = gauge_transform(WeightCocycle::trivial(x), u);
    const auto found = is_exact(w);
    REQUIRE(found);
    CHECK(gauge_transform(WeightCocycle::trivial(x), *found) == w);
    // Differs from u by a constant on each component.
    const auto labels = component_labels(*x);
    for (Vertex a = 0; a < x->vertex_count(); ++a) {
      for (Vertex b = 0; b < x->vertex_count(); ++b) {
        if (labels[a] == labels[b]) CHECK(found->value[a] / u.value[a] == found->value[b] / u.value[b]);
      }
    }
  }
}

TEST_CASE("is_exact agrees with fundamental-cycle holonomies") {
  auto t2 = named_space("t2_7");
  const auto classes = integral_class_basis(t2);
  REQUIRE(classes.size() == 2);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = random_weights(t2, classes, rng);
    bool all_one = true;
    for (const auto& loop : torus_loops()) all_one = all_one && holonomy(w, loop) == 1;
    CHECK(is_exact(w).has_value() == all_one);
  }
}

TEST_CASE("gauge transforms preserve holonomy") {
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(8);
  const auto w = random_weights(t2, rng);
  for (int i = 0; i < 10; ++i) {
    const auto g = gauge_transform(w, random_gauge(t2, rng));
    CHECK(check_cocycle(g).ok());
    for (const auto& loop : torus_loops()) CHECK(holonomy(g, loop) == holonomy(w, loop));
  }
  CHECK(gauge_transform(w, GaugeFunction::constant(t2)) == w);
}

TEST_CASE("gauge normalization") {
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(21);
  const auto w = random_weights(t2, rng);

  const auto [same, u0] = gauge_normalize_on(w, subcomplex(*t2, {{3}}));
  CHECK(same == w);

  const Simplex top = t2->simplices(2).front();
  const auto [normal, u] = gauge_normalize_on(w, subcomplex(*t2, {top}));
  CHECK(normal == gauge_transform(w, u));
  CHECK(normal.weight(top[0], top[1]) == 1);
  CHECK(normal.weight(top[1], top[2]) == 1);
  CHECK(normal.weight(top[0], top[2]) == 1);

  auto c = share(circle(3));
  CHECK_THROWS_AS(gauge_normalize_on(circle_character(c, 2), *c), GaugeError);
  CHECK_NOTHROW(gauge_normalize_on(circle_character(c, 1), *c));
}

TEST_CASE("integral classes") {
  auto c = share(circle(3));
  CHECK(from_integral_class(c, {0, 0, 0}, 5).is_trivial());
  const auto w = from_integral_class(c, {0, 1, 0}, 2);  // edges (0,1), (0,2), (1,2)
  CHECK(holonomy(w, {0, 1, 2, 0}) == 2);
  CHECK(from_integral_class(c, {3, 1, -2}, 1).is_trivial());
  auto disk = named_space("disk");
  CHECK_THROWS_AS(from_integral_class(disk, {1, 0, 0}, 2), InputError);
  CHECK_THROWS_AS(from_integral_class(c, {0, 1, 0}, 0), InputError);
}

TEST_CASE("tensor and inverse") {
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(4);
  const auto a = random_weights(t2, rng);
  const auto b = random_weights(t2, rng);
  const auto c = random_weights(t2, rng);
  CHECK(tensor(a, inverse(a)).is_trivial());
  CHECK(tensor(a, WeightCocycle::trivial(t2)) == a);
  CHECK(tensor(a, b) == tensor(b, a));
  CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
  CHECK(inverse(inverse(a)) == a);
  for (const auto& loop : torus_loops()) CHECK(holonomy(tensor(a, b), loop) == holonomy(a, loop) * holonomy(b, loop));
  CHECK_THROWS_AS(tensor(a, WeightCocycle::trivial(share(circle(3)))), InputError);
}

TEST_CASE("pullback") {
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(9);
  const auto w = random_weights(t2, rng);
  CHECK(pullback(SimplicialMap::identity(t2), w) == w);

  auto pt = share(point());
  CHECK(pullback(SimplicialMap{t2, pt, std::vector<Vertex>(7, 0)}, WeightCocycle::trivial(pt)).is_trivial());
  auto c = share(circle(3));
  CHECK(pullback(SimplicialMap{c, c, {0, 0, 0}}, circle_character(c, 2)).is_trivial());

  // Subdivision keeps holonomy: the loop 0 -> 1 -> 2 -> 0 of s1_3 becomes a
  // loop through the edge barycenters.
  const auto sd = barycentric_subdivision(c);
  const auto pulled = pullback(sd.carrier, circle_character(c, 3));
  CHECK(check_cocycle(pulled).ok());
  auto bary = [&](const Simplex& s) {
    return static_cast<Vertex>(std::find(sd.barycenter_of.begin(), sd.barycenter_of.end(), s) - sd.barycenter_of.begin());
  };
  const std::vector<Vertex> loop{0, bary({0, 1}), 1, bary({1, 2}), 2, bary({0, 2}), 0};
  CHECK(holonomy(pulled, loop) == holonomy(circle_character(c, 3), {0, 1, 2, 0}));

  // Composition.
  const SimplicialMap rot{c, c, {1, 2, 0}};
  const auto wc = circle_character(c, Rational(5, 2));
  CHECK(pullback(compose(rot, rot), wc) == pullback(rot, pullback(rot, wc)));
}

TEST_CASE("product systems") {
  auto c = share(circle(3));
  auto s2 = named_space("s2_4");
  const auto prod = product(c, s2);
  CHECK(product_system(prod, WeightCocycle::trivial(c), WeightCocycle::trivial(s2)).is_trivial());
  const auto w = product_system(prod, circle_character(c, 2), WeightCocycle::trivial(s2));
  CHECK(w == tensor(pullback(prod.to_a, circle_character(c, 2)), pullback(prod.to_b, WeightCocycle::trivial(s2))));
  // A loop in s1_3 x {b} carries the holonomy of the factor; a fiber {a} x s2_4 is trivial.
  const Vertex b = 2;
  CHECK(holonomy(w, {0 * 4 + b, 1 * 4 + b, 2 * 4 + b, 0 * 4 + b}) == 2);
  const auto fiber = share(subcomplex(*prod.complex, {{4, 5, 6}, {4, 5, 7}, {4, 6, 7}, {5, 6, 7}}));
  CHECK(restrict_to(w, fiber).is_trivial());
}

TEST_CASE("exact components") {
  auto c = share(circle(3));
  auto pt = share(point());
  auto u = share(disjoint_union(*c, *pt));
  std::vector<Rational> weights(circle_character(c, 2).edge_weights());
  CHECK(exact_component_count(WeightCocycle(u, weights)) == 1);
  CHECK(exact_component_count(WeightCocycle::trivial(u)) == 2);
}
