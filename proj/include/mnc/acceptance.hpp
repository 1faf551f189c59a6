/**
 * The acceptance suite: ten numbered criteria, each returning a verdict with
 * the failing cases spelled out. Randomized parts draw from a generator
 * seeded with (seed + criterion id), so any criterion can be rerun alone.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mnc/builtin.hpp"
#include "mnc/cohomology.hpp"
#include "mnc/constructions.hpp"
#include "mnc/manifold.hpp"
#include "mnc/oracles.hpp"
#include "mnc/random.hpp"
#include "mnc/spaces.hpp"
#include "mnc/verify.hpp"

namespace mnc {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }

  void absorb(const Report& r) {
    std::string what = r.suite + " on " + r.subject;
    for (const auto& f : r.failures) what += "; " + f;
    expect(r.pass, what);
  }
};

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  std::function<void(const std::string&)> progress;
};

namespace acceptance {

using Rng = std::mt19937_64;

inline std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return "(" + out + ")";
}

inline std::vector<std::size_t> betti(const ComplexPtr& x, const WeightCocycle& w, const RankOptions& ranks) {
  return cohomology(x, w, detail::rank_only(ranks)).betti;
}

/// Weights on A + B from weights on each part (edges of A sort first).
inline WeightCocycle union_weights(const ComplexPtr& u, const WeightCocycle& wa, const WeightCocycle& wb) {
  std::vector<Rational> w(wa.edge_weights());
  w.insert(w.end(), wb.edge_weights().begin(), wb.edge_weights().end());
  return WeightCocycle(u, std::move(w));
}

/// A nontrivial system where one exists (product of characters over the
/// H^1 basis), otherwise a random gauge of the trivial system.
inline WeightCocycle nontrivial_weights(const ComplexPtr& x, Rng& rng) {
  const auto classes = integral_class_basis(x);
  if (classes.empty()) return gauge_transform(WeightCocycle::trivial(x), random_gauge(x, rng));
  static const Rational bases[] = {Rational(2), Rational(3), Rational(5, 2)};
  WeightCocycle w = WeightCocycle::trivial(x);
  for (std::size_t i = 0; i < classes.size(); ++i) w = tensor(w, from_integral_class(x, classes[i], bases[i % 3]));
  return w;
}

// ---------------------------------------------------------------------------

inline void circles(CriterionResult& out, const RankOptions& ranks) {
  const std::vector<Rational> holonomies{Rational(1), Rational(2), Rational(3, 2), Rational(5)};
  for (std::size_t k = 3; k <= 5; ++k) {
    auto c = share(circle(k));
    for (const auto& t : holonomies) {
      const auto w = circle_character(c, t);
      // Hand-written twisted incidence matrix: edge (i, i+1) reads c(i+1) - c(i),
      // the closing edge (0, k-1) reads t c(k-1) - c(0).
      std::vector<std::vector<Rational>> rows;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        std::vector<Rational> row(k);
        row[i] = -1;
        row[i + 1] = 1;
        rows.push_back(row);
      }
      std::vector<Rational> closing(k);
      closing[0] = -1;
      closing[k - 1] = t;
      rows.push_back(closing);
      const std::size_t r = oracle::dense_rank(rows);
      const std::vector<std::size_t> oracle_betti{k - r, k - r};
      const std::vector<std::size_t> expected = t == 1 ? std::vector<std::size_t>{1, 1} : std::vector<std::size_t>{0, 0};
      const auto got = betti(c, w, ranks);
      const std::string where = "circle(" + std::to_string(k) + "), holonomy " + to_string(t);
      out.expect(oracle_betti == expected, where + ": hand matrix gives " + join(oracle_betti));
      out.expect(got == expected, where + ": betti " + join(got) + ", expected " + join(expected));
      out.expect(rank(coboundary_matrix(*c, w, 0)) == r, where + ": coboundary rank differs from the hand matrix");
    }
  }
}

inline void h0(CriterionResult& out, const RankOptions& ranks, Rng& rng) {
  std::size_t exact = 0;
  std::size_t twisted = 0;
  std::vector<std::pair<ComplexPtr, WeightCocycle>> pool;
  for (int i = 0; i < 20; ++i) {
    auto x = share(random_connected_complex(rng));
    const auto classes = i % 2 == 0 ? std::vector<std::vector<long long>>{} : integral_class_basis(x);
    const auto w = random_weights(x, classes, rng);
    const auto gauge = is_exact(w);
    (gauge ? exact : twisted)++;
    const auto b = betti(x, w, ranks);
    const std::string where = "random complex #" + std::to_string(i) + " f=" + join(x->f_vector());
    out.expect(b[0] == (gauge ? 1u : 0u), where + ": betti[0] = " + std::to_string(b[0]) +
                                              (gauge ? " but the system is exact" : " but the system is not exact"));
    if (gauge) {
      out.expect(gauge_transform(WeightCocycle::trivial(x), *gauge) == w, where + ": returned gauge does not reproduce w");
    }
    pool.emplace_back(x, w);
  }
  out.notes.push_back(std::to_string(exact) + " exact and " + std::to_string(twisted) + " non-exact random systems");

  for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
    const auto& [a, wa] = pool[i];
    const auto& [b, wb] = pool[i + 1];
    auto u = share(disjoint_union(*a, *b));
    const auto w = union_weights(u, wa, wb);
    const std::size_t expected = (is_exact(wa) ? 1 : 0) + (is_exact(wb) ? 1 : 0);
    const auto got = betti(u, w, ranks)[0];
    out.expect(got == expected, "union of random complexes #" + std::to_string(i) + ", #" + std::to_string(i + 1) +
                                    ": betti[0] = " + std::to_string(got) + ", expected " + std::to_string(expected));
  }
  auto c = share(circle(3));
  auto p = share(point());
  auto u = share(disjoint_union(*c, *p));
  const auto got = betti(u, union_weights(u, circle_character(c, Rational(2)), WeightCocycle::trivial(p)), ranks)[0];
  out.expect(got == 1, "circle with holonomy 2 + point: betti[0] = " + std::to_string(got));
}

inline void kunneth(CriterionResult& out, const RankOptions& ranks) {
  struct Factor {
    std::string name;
    ComplexPtr x;
    WeightCocycle w;
  };
  auto c = share(circle(3));
  auto s2 = named_space("s2_4");
  auto t2 = named_space("t2_7");
  auto pt = named_space("point");
  const auto classes = integral_class_basis(t2);
  const auto t2_twisted = tensor(from_integral_class(t2, classes[0], Rational(2)), from_integral_class(t2, classes[1], Rational(1, 3)));
  const std::vector<Factor> factors{
      {"point", pt, WeightCocycle::trivial(pt)},
      {"s1_3(t=1)", c, circle_character(c, Rational(1))},
      {"s1_3(t=2)", c, circle_character(c, Rational(2))},
      {"s2_4", s2, WeightCocycle::trivial(s2)},
      {"t2_7(trivial)", t2, WeightCocycle::trivial(t2)},
      {"t2_7(2^a 3^-b)", t2, t2_twisted},
  };
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i; j < factors.size(); ++j) {
      auto r = verify_kunneth(factors[i].x, factors[i].w, factors[j].x, factors[j].w, ranks);
      r.subject = factors[i].name + " x " + factors[j].name;
      out.absorb(r);
    }
  }
}

inline void euler(CriterionResult& out, const RankOptions& ranks, Rng& rng) {
  for (const auto& [name, x] : suite_complexes()) {
    const auto classes = integral_class_basis(x);
    for (int i = 0; i < 5; ++i) {
      auto r = verify_euler(x, random_weights(x, classes, rng), ranks);
      r.subject = name + ", random system " + std::to_string(i);
      out.absorb(r);
    }
  }
}

inline void poincare(CriterionResult& out, const RankOptions& ranks, Rng& rng) {
  std::vector<std::pair<std::string, ComplexPtr>> spaces;
  for (const char* name : {"s1_3", "s2_4", "t2_7"}) spaces.emplace_back(name, named_space(name));
  spaces.emplace_back("s1_3 x s2_4", product(named_space("s1_3"), named_space("s2_4")).complex);
  spaces.emplace_back("cp2_9", named_space("cp2_9"));
  spaces.emplace_back("t3", named_space("t3"));
  for (const auto& [name, x] : spaces) {
    const auto cert = orientable_certificate(x);
    out.expect(cert.has_value(), name + ": no orientation certificate");
    if (!cert) continue;
    auto r = verify_poincare(*cert, WeightCocycle::trivial(x), ranks);
    r.subject = name + ", trivial system";
    out.absorb(r);
    r = verify_poincare(*cert, nontrivial_weights(x, rng), ranks);
    r.subject = name + ", nontrivial system";
    out.absorb(r);
  }
}

inline void invariance(CriterionResult& out, const RankOptions& ranks, Rng& rng,
                       const std::function<void(const std::string&)>& progress) {
  for (const auto& [name, x] : suite_complexes()) {
    if (progress) progress("criterion 6: " + name);
    const auto w = nontrivial_weights(x, rng);
    const auto base = betti(x, w, ranks);
    for (int i = 0; i < 10; ++i) {
      const auto b = betti(x, gauge_transform(w, random_gauge(x, rng)), ranks);
      out.expect(b == base, name + ": gauge " + std::to_string(i) + " changes betti " + join(base) + " to " + join(b));
    }
    const auto sd = barycentric_subdivision(x);
    const auto pulled = pullback(sd.carrier, w);
    const auto b = betti(sd.complex, pulled, ranks);
    out.expect(b == base, name + ": subdivision changes betti " + join(base) + " to " + join(b));
    const auto map = induced_map(sd.carrier, w, pulled, std::nullopt, ranks);
    out.expect(map.is_isomorphism(), name + ": carrier map is not an isomorphism on cohomology");
  }
}

inline void exactness(CriterionResult& out, const RankOptions& ranks, Rng& rng) {
  auto disk = named_space("disk");
  auto circle_boundary = share(subcomplex(*disk, {{0, 1}, {1, 2}, {0, 2}}));
  auto s2 = named_space("s2_4");
  auto t2 = named_space("t2_7");
  const auto [cap, lid] = sphere_hemispheres(s2);
  const auto [left, right] = torus_annuli(t2);
  // The disk and the sphere are simply connected, so their only systems are
  // gauge transforms of the trivial one.
  const std::vector<std::pair<std::string, WeightCocycle>> disk_systems{
      {"trivial", WeightCocycle::trivial(disk)},
      {"gauge", gauge_transform(WeightCocycle::trivial(disk), random_gauge(disk, rng))}};
  const std::vector<std::pair<std::string, WeightCocycle>> sphere_systems{
      {"trivial", WeightCocycle::trivial(s2)}, {"gauge", gauge_transform(WeightCocycle::trivial(s2), random_gauge(s2, rng))}};
  const auto classes = integral_class_basis(t2);
  const std::vector<std::pair<std::string, WeightCocycle>> torus_systems{
      {"trivial", WeightCocycle::trivial(t2)}, {"holonomy 2", from_integral_class(t2, classes[0], Rational(2))}};

  for (const auto& [label, w] : disk_systems) {
    auto r = les_of_pair(disk, circle_boundary, w, ranks);
    r.subject = "(2-simplex, boundary), " + label;
    out.absorb(r);
    // H(X, A) should be the relative top class (0, 0, 1).
    const auto rel = relative_cohomology(disk, *circle_boundary, w, detail::rank_only(ranks)).betti;
    out.expect(rel == std::vector<std::size_t>{0, 0, 1}, "(2-simplex, boundary): relative betti " + join(rel));
  }
  for (const auto& [label, w] : sphere_systems) {
    auto r = verify_mayer_vietoris(s2, cap, lid, w, ranks);
    r.subject = "s2_4 hemispheres, " + label;
    out.absorb(r);
    const bool recovers = r.lhs.size() >= 7 && r.lhs[0] == 1 && r.lhs[3] == 0 && r.lhs[6] == 1;
    out.expect(recovers, "s2_4 hemispheres: H(X) along the sequence is not (1, 0, 1)");
    auto les = les_of_pair(s2, lid, w, ranks);
    les.subject = "(s2_4, triangle), " + label;
    out.absorb(les);
  }
  for (const auto& [label, w] : torus_systems) {
    auto r = verify_mayer_vietoris(t2, left, right, w, ranks);
    r.subject = "t2_7 annuli, " + label;
    out.absorb(r);
    auto les = les_of_pair(t2, left, w, ranks);
    les.subject = "(t2_7, annulus), " + label;
    out.absorb(les);
  }
}

inline void lefschetz(CriterionResult& out, const RankOptions& ranks) {
  auto c = share(circle(3));
  const auto prod = product(c, c);
  const auto& t = prod.complex;
  struct Case {
    std::string name;
    SimplicialMap f;
    WeightCocycle w;
  };
  std::vector<Case> cases;
  for (const auto& t_hol : {Rational(1), Rational(2)}) {
    const auto w = circle_character(c, t_hol);
    const std::string sys = ", holonomy " + to_string(t_hol);
    cases.push_back({"identity on s1_3" + sys, SimplicialMap::identity(c), w});
    cases.push_back({"rotation on s1_3" + sys, {c, c, {1, 2, 0}}, w});
    std::vector<Vertex> swap(t->vertex_count());
    for (Vertex v = 0; v < swap.size(); ++v) swap[v] = static_cast<Vertex>((v % 3) * 3 + v / 3);
    const auto wt = product_system(prod, w, w);
    cases.push_back({"coordinate swap on s1_3 x s1_3" + sys, {t, t, swap}, wt});
  }
  for (const auto& [name, f, w] : cases) {
    const auto gauge = find_gauge(w, pullback(f, w));
    out.expect(gauge.has_value(), name + ": the map does not preserve the system up to gauge");
    if (!gauge) continue;
    auto r = verify_lefschetz(f, w, *gauge, ranks);
    r.subject = name;
    out.absorb(r);
  }
  // L(id) is the twisted Euler characteristic.
  const auto wt = product_system(prod, circle_character(c, Rational(2)), circle_character(c, Rational(1)));
  const auto l = lefschetz_number(SimplicialMap::identity(t), wt, GaugeFunction::constant(t), ranks);
  out.expect(l == cohomology(t, wt, detail::rank_only(ranks)).euler_twisted, "identity on s1_3 x s1_3: L != euler");
}

inline void blowup(CriterionResult& out, const RankOptions& ranks, const std::function<void(const std::string&)>& progress) {
  RankOptions modular = ranks;
  modular.modular_only = true;
  modular.audit = nullptr;
  auto cp2 = named_space("cp2_9");
  auto t4 = named_space("t4");
  auto c = share(circle(3));
  const auto t4_twisted = pullback(torus_projection(t4, 4, 0), circle_character(c, Rational(2)));
  struct Case {
    std::string name;
    ComplexPtr x;
    WeightCocycle w;
    std::vector<std::size_t> expected;
  };
  const std::vector<Case> cases{
      {"cp2_9 # cp2_9, trivial", cp2, WeightCocycle::trivial(cp2), {1, 0, 2, 0, 1}},
      {"t4 # cp2_9, trivial", t4, WeightCocycle::trivial(t4), {1, 4, 7, 4, 1}},
      {"t4 # cp2_9, holonomy 2 on the first factor", t4, t4_twisted, {0, 0, 1, 0, 0}},
  };
  for (const auto& [name, x, w, expected] : cases) {
    if (progress) progress("criterion 9: " + name);
    auto r = verify_blowup_dims(x, w, ranks);
    r.subject = name;
    out.absorb(r);
    std::vector<std::size_t> got;
    for (const auto& q : r.lhs) got.push_back(static_cast<std::size_t>(boost::multiprecision::numerator(q).convert_to<long long>()));
    out.expect(got == expected, name + ": betti " + join(got) + ", expected " + join(expected));
    auto fast = verify_blowup_dims(x, w, modular);
    out.expect(fast.lhs == r.lhs, name + ": modular ranks disagree with exact ranks");
    out.expect(fast.probabilistic, name + ": modular run was not flagged probabilistic");
  }
}

inline void modular_consistency(CriterionResult& out, const RankAudit& audit) {
  out.expect(audit.matrices > 0, "no coboundary matrix was audited");
  out.expect(audit.comparisons >= audit.matrices, "fewer modular comparisons than audited matrices");
  for (const auto& m : audit.mismatches) out.expect(false, m);
  out.notes.push_back(std::to_string(audit.matrices) + " exact ranks, " + std::to_string(audit.comparisons) +
                      " modular comparisons, " + std::to_string(audit.skipped_primes.size()) + " primes skipped");
}

}  // namespace acceptance

inline const std::vector<std::string>& criterion_titles() {
  static const std::vector<std::string> titles{
      "circle criterion",
      "H^0 criterion",
      "Kunneth",
      "Euler characteristic invariance",
      "Poincare duality",
      "gauge and subdivision invariance",
      "LES / Mayer-Vietoris exactness",
      "Lefschetz numbers",
      "blow-up dimensions",
      "modular rank consistency",
  };
  return titles;
}

/// Runs criteria 1..10 (or the listed subset; 10 then audits only what ran).
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {}, std::vector<int> only = {}) {
  if (only.empty()) only = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  RankAudit audit;
  RankOptions ranks;
  ranks.audit = &audit;
  std::vector<CriterionResult> results;
  for (int id : only) {
    if (id < 1 || id > 10) throw InputError("no acceptance criterion " + std::to_string(id));
    if (opts.progress) opts.progress("criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.title = criterion_titles()[static_cast<std::size_t>(id - 1)];
    acceptance::Rng rng(opts.seed + static_cast<std::uint64_t>(id));
    detail::Stopwatch clock;
    try {
      switch (id) {
        case 1: acceptance::circles(r, ranks); break;
        case 2: acceptance::h0(r, ranks, rng); break;
        case 3: acceptance::kunneth(r, ranks); break;
        case 4: acceptance::euler(r, ranks, rng); break;
        case 5: acceptance::poincare(r, ranks, rng); break;
        case 6: acceptance::invariance(r, ranks, rng, opts.progress); break;
        case 7: acceptance::exactness(r, ranks, rng); break;
        case 8: acceptance::lefschetz(r, ranks); break;
        case 9: acceptance::blowup(r, ranks, opts.progress); break;
        case 10: acceptance::modular_consistency(r, audit); break;
      }
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    r.seconds = clock.seconds();
    results.push_back(std::move(r));
  }
  return results;
}

/// Static data of the builtin complexes against their known shapes.
inline CriterionResult check_builtin_data() {
  CriterionResult r;
  r.title = "builtin data";
  struct Expected {
    const char* name;
    std::vector<std::size_t> f;
    bool orientable;
  };
  const std::vector<Expected> table{
      {"s1_3", {3, 3}, true},
      {"s2_4", {4, 6, 4}, true},
      {"t2_7", {7, 21, 14}, true},
      {"rp2_6", {6, 15, 10}, false},
      {"cp2_9", {9, 36, 84, 90, 36}, true},
  };
  for (const auto& e : table) {
    auto x = named_space(e.name);
    const auto diag = validate(*x);
    r.expect(diag.ok(), std::string(e.name) + ": " + (diag.ok() ? "" : diag.issues.front()));
    r.expect(x->f_vector() == e.f, std::string(e.name) + ": f-vector " + acceptance::join(x->f_vector()) +
                                       ", expected " + acceptance::join(e.f));
    r.expect(orientable_certificate(x).has_value() == e.orientable,
             std::string(e.name) + (e.orientable ? ": orientation certificate missing" : ": unexpected orientation certificate"));
  }
  return r;
}

}  // namespace mnc
