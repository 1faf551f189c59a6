#include <random>

#include <catch_amalgamated.hpp>

#include "mnc/builtin.hpp"
#include "mnc/cohomology.hpp"
#include "mnc/oracles.hpp"
#include "mnc/random.hpp"
#include "mnc/spaces.hpp"
#include "mnc/twisted.hpp"
#include "mnc/verify.hpp"

using namespace mnc;

namespace {

using B = std::vector<std::size_t>;

B betti(const ComplexPtr& x, const WeightCocycle& w) { return cohomology(x, w, {false, {}}).betti; }

RationalVector random_cochain(const Complex& x, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  RationalVector c(x.count(p));
  for (auto& v : c) v = Rational(d(rng), 1 + (d(rng) + 3) % 3);
  return c;
}

std::vector<RationalVector> dense_rows(const RationalSparseMatrix& m) {
  std::vector<RationalVector> out(m.rows(), RationalVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) out[r][c] = v;
  }
  return out;
}

RationalVector add(RationalVector a, const RationalVector& b, const Rational& scale = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

}  // namespace

TEST_CASE("coboundary matrix examples") {
  auto c = share(circle(3));
  CHECK(coboundary_matrix(*c, WeightCocycle::trivial(c), 1).rows() == 0);
  CHECK(coboundary_matrix(*c, WeightCocycle::trivial(c), -1).cols() == 0);

  const auto untwisted = coboundary_matrix(*c, WeightCocycle::trivial(c), 0);
  CHECK(dense_rows(untwisted) == std::vector<RationalVector>{{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}});
  CHECK(rank(untwisted) == 2);

  // Rows (0,1), (0,2), (1,2): (dc)(a,b) = w(a,b) c(b) - c(a).
  const auto twisted = coboundary_matrix(*c, circle_character(c, 2), 0);
  CHECK(dense_rows(twisted) == std::vector<RationalVector>{{-1, 1, 0}, {-1, 0, 2}, {0, -1, 1}});
  CHECK(rank(twisted) == 3);
}

TEST_CASE("coboundaries square to zero") {
  std::mt19937_64 rng(1);
  for (const auto& [name, x] : suite_complexes()) {
    INFO(name);
    const auto w = random_weights(x, rng);
    const TwistedComplex tx(x, w);
    CHECK(tx.cochains().squares_to_zero());
  }
}

TEST_CASE("a broken cocycle is rejected") {
  auto disk = named_space("disk");
  const auto bad = WeightCocycle::from_map(disk, {{{0, 1}, 2}, {{1, 2}, 3}, {{0, 2}, 5}});
  CHECK_THROWS_AS(TwistedComplex(disk, bad), InputError);
}

TEST_CASE("cohomology examples") {
  auto pt = share(point());
  auto c = share(circle(3));
  CHECK(betti(pt, WeightCocycle::trivial(pt)) == B{1});
  CHECK(betti(c, circle_character(c, 2)) == B{0, 0});
  CHECK(betti(c, WeightCocycle::trivial(c)) == B{1, 1});
  auto t2 = named_space("t2_7");
  CHECK(betti(t2, WeightCocycle::trivial(t2)) == B{1, 2, 1});
  CHECK(betti(torus(2), WeightCocycle::trivial(torus(2))) == B{1, 2, 1});
  CHECK(betti(named_space("rp2_6"), WeightCocycle::trivial(named_space("rp2_6"))) == B{1, 0, 0});
  auto cp2 = named_space("cp2_9");
  CHECK(betti(cp2, WeightCocycle::trivial(cp2)) == B{1, 0, 1, 0, 1});
  const auto classes = integral_class_basis(t2);
  CHECK(betti(t2, from_integral_class(t2, classes[0], 2)) == B{0, 0, 0});
}

TEST_CASE("betti lists have one entry per degree") {
  for (const auto& [name, x] : suite_complexes()) {
    INFO(name);
    CHECK(betti(x, WeightCocycle::trivial(x)).size() == static_cast<std::size_t>(x->dimension() + 1));
  }
}

TEST_CASE("bases are independent cocycles modulo coboundaries") {
  std::mt19937_64 rng(6);
  for (const auto& [name, x] : suite_complexes()) {
    if (x->simplex_total() > 300) continue;
    INFO(name);
    const auto w = random_weights(x, rng);
    const TwistedComplex tx(x, w);
    const auto h = cohomology(tx.cochains());
    REQUIRE(h.has_bases());
    for (int p = 0; p <= x->dimension(); ++p) {
      const auto up = static_cast<std::size_t>(p);
      CHECK(h.bases[up].size() == h.betti[up]);
      const auto d = tx.cochains().differential(p);
      for (const auto& z : h.bases[up]) CHECK(d.apply(z) == RationalVector(d.rows()));
      // Image of the previous coboundary together with the representatives.
      auto gens = dense_rows(tx.cochains().differential(p - 1).transpose());
      const std::size_t image = oracle::dense_rank(gens);
      gens.insert(gens.end(), h.bases[up].begin(), h.bases[up].end());
      CHECK(oracle::dense_rank(gens) == image + h.betti[up]);
    }
    CHECK(h.euler_twisted == euler_characteristic(*x));
  }
}

TEST_CASE("coordinates of cocycles") {
  auto t2 = named_space("t2_7");
  const TwistedComplex tx(t2, WeightCocycle::trivial(t2));
  const auto h = cohomology(tx.cochains());
  // A representative plus a coboundary has unit coordinates.
  std::mt19937_64 rng(2);
  const auto shift = tx.coboundary(0, random_cochain(*t2, 0, rng));
  const auto coords = h.coordinates(1, add(h.bases[1][1], shift));
  CHECK(coords == RationalVector{0, 1});
  RationalVector not_cocycle(t2->count(1));
  not_cocycle[0] = 1;
  CHECK_THROWS_AS(h.coordinates(1, not_cocycle), std::logic_error);
}

TEST_CASE("cohomology is deterministic") {
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(12);
  const auto w = random_weights(t2, rng);
  const auto a = cohomology(t2, w);
  const auto b = cohomology(t2, w);
  CHECK(a.bases == b.bases);
}

TEST_CASE("modular ranks agree with exact ranks on suite coboundaries") {
  std::mt19937_64 rng(99);
  const auto primes = random_primes(rng, 3);
  for (const auto& [name, x] : suite_complexes()) {
    INFO(name);
    const TwistedComplex tx(x, random_weights(x, rng));
    for (int p = 0; p < x->dimension(); ++p) {
      const auto d = tx.cochains().differential(p);
      for (auto q : primes) CHECK(rank_mod_p(d, q) == rank(d));
    }
  }
  auto t2 = named_space("t2_7");
  RankOptions fast;
  fast.modular_only = true;
  const auto h = cohomology(t2, WeightCocycle::trivial(t2), {false, fast});
  CHECK(h.probabilistic);
  CHECK(h.betti == B{1, 2, 1});
}

TEST_CASE("H0 criterion") {
  auto c = share(circle(3));
  auto pt = share(point());
  CHECK(h0_criterion(WeightCocycle::trivial(c)) == 1);
  CHECK(h0_criterion(circle_character(c, 2)) == 0);
  auto u = share(disjoint_union(*c, *pt));
  const WeightCocycle w(u, circle_character(c, 2).edge_weights());
  CHECK(h0_criterion(w) == 1);
  CHECK(betti(u, w)[0] == 1);
  CHECK(verify_h0(u, w).pass);
}

TEST_CASE("relative cohomology") {
  auto disk = named_space("disk");
  auto w = WeightCocycle::trivial(disk);
  const auto rim = subcomplex(*disk, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(relative_cohomology(disk, rim, w, {false, {}}).betti == B{0, 0, 1});
  CHECK(relative_cohomology(disk, Complex::from_maximal(3, {}, false), w, {false, {}}).betti == betti(disk, w));
  CHECK(relative_cohomology(disk, *disk, w, {false, {}}).betti == B{0, 0, 0});
  CHECK_THROWS_AS(relative_cohomology(disk, builtin("s2_4"), w), InputError);
}

TEST_CASE("cochain pullback commutes with coboundary") {
  std::mt19937_64 rng(31);
  auto check_map = [&](const SimplicialMap& f, const WeightCocycle& w_target, const WeightCocycle& w_source,
                       const GaugeFunction& u) {
    for (int p = 0; p < f.target->dimension(); ++p) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto c = random_cochain(*f.target, p, rng);
        const auto lhs = coboundary_matrix(*f.source, w_source, p).apply(pullback_cochain(f, w_target, &u, p, c));
        const auto rhs = pullback_cochain(f, w_target, &u, p + 1, coboundary_matrix(*f.target, w_target, p).apply(c));
        CHECK(lhs == rhs);
      }
    }
  };
  for (const auto& [name, x] : suite_complexes()) {
    if (x->simplex_total() > 300) continue;
    INFO(name);
    const auto w = random_weights(x, rng);
    const auto sd = barycentric_subdivision(x);
    check_map(sd.carrier, w, pullback(sd.carrier, w), GaugeFunction::constant(sd.complex));
  }
  auto c = share(circle(3));
  const SimplicialMap rot{c, c, {1, 2, 0}};
  const auto w = circle_character(c, 3);
  const auto u = find_gauge(w, pullback(rot, w));
  REQUIRE(u);
  check_map(rot, w, w, *u);
  // Reflection, a map that reverses vertex order on some edges.
  const SimplicialMap flip{c, c, {0, 2, 1}};
  const auto wf = pullback(flip, w);
  check_map(flip, w, wf, GaugeFunction::constant(c));
}

TEST_CASE("induced maps") {
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(41);
  const auto w = random_weights(t2, rng);
  const auto id = induced_map(SimplicialMap::identity(t2), w, w);
  for (const auto& m : id.matrices) CHECK(m == DenseMatrix::identity(m.rows));

  auto pt = share(point());
  const auto collapse = induced_map(SimplicialMap{t2, pt, std::vector<Vertex>(7, 0)}, WeightCocycle::trivial(pt),
                                    WeightCocycle::trivial(t2));
  REQUIRE(collapse.matrices.size() == 3);
  CHECK(rank(collapse.matrices[0]) == 1);
  CHECK(rank(collapse.matrices[1]) == 0);

  for (const auto& [name, x] : suite_complexes()) {
    if (x->simplex_total() > 200) continue;
    INFO(name);
    const auto wx = random_weights(x, rng);
    const auto sd = barycentric_subdivision(x);
    CHECK(induced_map(sd.carrier, wx, pullback(sd.carrier, wx)).is_isomorphism());
  }

  auto c = share(circle(3));
  const SimplicialMap rot{c, c, {1, 2, 0}};
  CHECK_THROWS_AS(induced_map(rot, circle_character(c, 2), circle_character(c, 2)), GaugeError);
  try {
    induced_map(rot, circle_character(c, 2), circle_character(c, 2));
  } catch (const GaugeError& e) {
    CHECK(std::string(e.what()).find("edge [") != std::string::npos);
  }

  // Functoriality: (g f)* = f* g* on the trivial system.
  const auto wc = WeightCocycle::trivial(c);
  const SimplicialMap flip{c, c, {0, 2, 1}};
  const auto fg = induced_map(compose(flip, rot), wc, wc);
  const auto f_star = induced_map(rot, wc, wc);
  const auto g_star = induced_map(flip, wc, wc);
  for (std::size_t p = 0; p < fg.matrices.size(); ++p) CHECK(fg.matrices[p] == f_star.matrices[p] * g_star.matrices[p]);
}

TEST_CASE("cup products") {
  std::mt19937_64 rng(77);
  auto c = share(circle(3));
  auto t2 = named_space("t2_7");
  auto t3 = torus(3);
  for (const auto& x : {c, t2, t3}) {
    const auto classes = integral_class_basis(x);
    const auto w1 = random_weights(x, classes, rng);
    const auto w2 = random_weights(x, classes, rng);
    const auto w3 = random_weights(x, classes, rng);
    const int n = x->dimension();
    // Unit.
    const auto a0 = TwistedCochain{w1, 1, random_cochain(*x, 1, rng)};
    CHECK(cup(unit_cochain(x), a0).values == a0.values);
    CHECK(cup(a0, unit_cochain(x)).values == a0.values);
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; p + q <= n; ++q) {
        const TwistedCochain a{w1, p, random_cochain(*x, p, rng)};
        const TwistedCochain b{w2, q, random_cochain(*x, q, rng)};
        // Leibniz: d(a u b) = da u b + (-1)^p a u db.
        if (p + q < n) {
          const auto lhs = coboundary(cup(a, b)).values;
          auto rhs = cup(coboundary(a), b).values;
          rhs = add(rhs, cup(a, coboundary(b)).values, p % 2 == 0 ? 1 : -1);
          CHECK(lhs == rhs);
        }
        for (int r = 0; p + q + r <= n; ++r) {
          const TwistedCochain e{w3, r, random_cochain(*x, r, rng)};
          CHECK(cup(cup(a, b), e).values == cup(a, cup(b, e)).values);
        }
      }
    }
  }
}

TEST_CASE("Lefschetz numbers") {
  auto c = share(circle(3));
  const auto w2 = circle_character(c, 2);
  const SimplicialMap rot{c, c, {1, 2, 0}};
  const auto u = find_gauge(w2, pullback(rot, w2));
  REQUIRE(u);
  CHECK(lefschetz_number(rot, w2, *u) == 0);
  CHECK(lefschetz_number(rot, WeightCocycle::trivial(c), GaugeFunction::constant(c)) == 0);
  CHECK(oracle::chain_level_lefschetz(*c, rot.images) == 0);
  auto t2 = named_space("t2_7");
  std::mt19937_64 rng(5);
  const auto w = random_weights(t2, rng);
  CHECK(lefschetz_number(SimplicialMap::identity(t2), w, GaugeFunction::constant(t2)) ==
        cohomology(t2, w, {false, {}}).euler_twisted);
  auto s2 = named_space("s2_4");
  CHECK(lefschetz_number(SimplicialMap::identity(s2), WeightCocycle::trivial(s2), GaugeFunction::constant(s2)) == 2);
}

TEST_CASE("verification reports") {
  auto c = share(circle(3));
  auto s2 = named_space("s2_4");
  auto r = verify_kunneth(c, circle_character(c, 2), c, WeightCocycle::trivial(c));
  CHECK(r.pass);
  CHECK(r.lhs == std::vector<Rational>{0, 0, 0});
  r = verify_kunneth(s2, WeightCocycle::trivial(s2), c, WeightCocycle::trivial(c));
  CHECK(r.pass);
  CHECK(r.lhs == std::vector<Rational>{1, 1, 1, 1});

  r = verify_poincare(s2, WeightCocycle::trivial(s2));
  CHECK(r.pass);
  CHECK(r.lhs == std::vector<Rational>{1, 0, 1});
  auto t2 = named_space("t2_7");
  const auto classes = integral_class_basis(t2);
  const auto generic = tensor(from_integral_class(t2, classes[0], 2), from_integral_class(t2, classes[1], 3));
  r = verify_poincare(t2, generic);
  CHECK(r.pass);
  CHECK(r.lhs == std::vector<Rational>{0, 0, 0});
  CHECK_THROWS_AS(verify_poincare(named_space("rp2_6"), WeightCocycle::trivial(named_space("rp2_6"))),
                  PreconditionError);

  CHECK(verify_euler(c, circle_character(c, 2)).pass);
  CHECK(verify_euler(t2, generic).pass);

  auto empty = share(Complex::from_maximal(t2->vertex_count(), {}, false));
  CHECK(verify_mayer_vietoris(t2, t2, empty, generic).pass);
  CHECK(les_of_pair(t2, empty, generic).pass);
  CHECK(les_of_pair(t2, t2, generic).pass);
  CHECK_THROWS_AS(verify_mayer_vietoris(t2, empty, empty, generic), InputError);

  auto cp2 = named_space("cp2_9");
  r = verify_blowup_dims(cp2, WeightCocycle::trivial(cp2));
  CHECK(r.pass);
  CHECK(r.lhs == std::vector<Rational>{1, 0, 2, 0, 1});
  CHECK_THROWS_AS(verify_blowup_dims(t2, generic), PreconditionError);
}

TEST_CASE("the blow-up model keeps the system on the old part") {
  auto cp2 = named_space("cp2_9");
  const auto model = point_blowup_model(cp2, WeightCocycle::trivial(cp2));
  CHECK(check_cocycle(model.weights).ok());
  CHECK(euler_characteristic(*model.complex) == 4);
  CHECK(orientable_certificate(model.complex).has_value());
}
