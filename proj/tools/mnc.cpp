// mnc: command-line front end for the twisted cohomology engine.
//
//   mnc betti COMPLEX [WEIGHTS]
//   mnc build KIND ARGS... [-o FILE]
//   mnc verify SUITE ARGS...
//   mnc selftest
//
// COMPLEX is a JSON file or builtin:NAME. Exit codes: 0 pass, 1 assertion
// failure, 2 input or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mnc/mnc.hpp"

namespace {

using namespace mnc;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Global {
  std::uint64_t seed = kDefaultSeed;
  std::string output;
  bool fast_modular = false;
  bool progress = false;

  RankOptions ranks() const {
    RankOptions r;
    r.modular_only = fast_modular;
    if (progress) r.progress = [](const std::string& s) { std::cerr << "[progress] " << s << "\n"; };
    return r;
  }
};

struct Loaded {
  std::string name;
  ComplexPtr x;
};

Loaded load_complex(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    const auto name = spec.substr(prefix.size());
    return {name, named_space(name)};
  }
  auto doc = io::read_complex(spec);
  const auto diag = validate(doc.complex);
  if (!diag.ok()) throw InputError(spec + ": " + diag.issues.front());
  return {doc.name.empty() ? spec : doc.name, share(std::move(doc.complex))};
}

/// Weights from a file, or a holonomy character on the first H^1 class, or
/// the trivial system.
WeightCocycle load_weights(const ComplexPtr& x, const std::string& path, const std::string& holonomy) {
  if (!path.empty() && !holonomy.empty()) throw InputError("give either a weight file or --holonomy, not both");
  if (!path.empty()) return io::read_weights(path, x);
  if (!holonomy.empty()) {
    const auto classes = integral_class_basis(x);
    if (classes.empty()) throw InputError("--holonomy needs a complex with nonzero H^1");
    return from_integral_class(x, classes.front(), parse_rational(holonomy));
  }
  return WeightCocycle::trivial(x);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string betti_line(const std::vector<std::size_t>& betti) {
  std::string out = "betti:";
  for (auto b : betti) out += " " + std::to_string(b);
  return out;
}

std::vector<Vertex> parse_images(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("vertex map '" + text + "' must be a comma-separated list of vertex indices");
    }
    out.push_back(static_cast<Vertex>(std::stoul(item)));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Reports {
  std::vector<Report> items;

  int emit(const Global& g) const {
    bool pass = true;
    io::Json all = io::Json::array();
    for (const auto& r : items) {
      std::cout << io::to_text(r, false);
      if (g.progress) std::cerr << "[time] " << r.suite << " on " << r.subject << ": " << r.seconds << " s\n";
      all.push_back(io::to_json(r, false));
      pass = pass && r.pass;
    }
    std::cout << (pass ? "verdict: pass" : "verdict: FAIL") << "\n";
    if (!g.output.empty()) write_text(g.output, all.dump(2) + "\n");
    return pass ? kPass : kFail;
  }
};

int cmd_betti(const Global& g, const std::string& complex_spec, const std::string& weight_path,
              const std::string& holonomy) {
  const auto [name, x] = load_complex(complex_spec);
  const auto w = load_weights(x, weight_path, holonomy);
  const CohomologyOptions opts{false, g.ranks()};
  const auto h = cohomology(x, w, opts);
  const auto h0 = h0_criterion(w);
  const auto chi = euler_characteristic(*x);
  std::ostringstream out;
  out << "complex: " << name << " (f-vector";
  for (auto f : x->f_vector()) out << " " << f;
  out << ")\n";
  out << betti_line(h.betti) << "\n";
  out << "euler: twisted " << h.euler_twisted << ", simplicial " << chi << "\n";
  const bool h0_ok = !h.betti.empty() && h.betti[0] == h0;
  out << "h0 criterion: " << h0 << " component(s) with exact system, " << (h0_ok ? "matches" : "DOES NOT match")
      << " betti[0]\n";
  if (h.probabilistic) out << "note: ranks computed modulo primes only\n";
  write_text(g.output, out.str());
  return h0_ok && h.euler_twisted == chi ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::string kind;
  std::vector<std::string> inputs;
  std::vector<std::string> weights;
  std::string map;
  std::string weights_output;
};

int cmd_build(const Global& g, const BuildArgs& a) {
  auto need = [&](std::size_t n) {
    if (a.inputs.size() != n) {
      throw InputError("build " + a.kind + " takes " + std::to_string(n) + " input(s), got " +
                       std::to_string(a.inputs.size()));
    }
  };
  auto weights_path = [&]() {
    if (!a.weights_output.empty()) return a.weights_output;
    if (g.output.empty()) throw InputError("writing weights needs --weights-output or --output");
    auto base = g.output;
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json") base.resize(base.size() - 5);
    return base + ".weights.json";
  };
  std::string name;
  ComplexPtr result;
  std::optional<WeightCocycle> result_weights;

  if (a.kind == "builtin") {
    need(1);
    name = a.inputs[0];
    result = named_space(name);
  } else if (a.kind == "product") {
    need(2);
    const auto l = load_complex(a.inputs[0]);
    const auto r = load_complex(a.inputs[1]);
    const auto prod = product(l.x, r.x);
    name = l.name + " x " + r.name;
    result = prod.complex;
    if (a.weights.size() == 2) {
      result_weights = product_system(prod, io::read_weights(a.weights[0], l.x), io::read_weights(a.weights[1], r.x));
    } else if (!a.weights.empty()) {
      throw InputError("build product takes weights for both factors or for neither");
    }
  } else if (a.kind == "connect-sum") {
    need(2);
    const auto l = load_complex(a.inputs[0]);
    const auto r = load_complex(a.inputs[1]);
    name = l.name + " # " + r.name;
    result = share(connected_sum(*l.x, *r.x));
  } else if (a.kind == "mapping-torus") {
    need(1);
    const auto f = load_complex(a.inputs[0]);
    if (a.map.empty()) throw InputError("build mapping-torus needs --map with the vertex images");
    SimplicialMap m{f.x, f.x, parse_images(a.map)};
    const auto diag = m.validate();
    if (!diag.ok()) throw InputError(diag.issues.front());
    name = "mapping torus of " + f.name;
    result = share(mapping_torus(m));
  } else if (a.kind == "subdivide") {
    need(1);
    const auto x = load_complex(a.inputs[0]);
    const auto sd = barycentric_subdivision(x.x);
    name = "sd " + x.name;
    result = sd.complex;
    if (a.weights.size() == 1) result_weights = pullback(sd.carrier, io::read_weights(a.weights[0], x.x));
  } else if (a.kind == "cone" || a.kind == "suspension") {
    need(1);
    const auto x = load_complex(a.inputs[0]);
    name = a.kind + " " + x.name;
    result = share(a.kind == "cone" ? cone(*x.x) : suspension(*x.x));
  } else if (a.kind == "disjoint-union") {
    need(2);
    const auto l = load_complex(a.inputs[0]);
    const auto r = load_complex(a.inputs[1]);
    name = l.name + " + " + r.name;
    result = share(disjoint_union(*l.x, *r.x));
  } else {
    throw InputError("unknown build kind '" + a.kind +
                     "' (product, connect-sum, mapping-torus, subdivide, cone, suspension, disjoint-union, builtin)");
  }
  write_text(g.output, io::write_complex(*result, name));
  if (result_weights) write_text(weights_path(), io::write_weights(*result_weights));
  if (!g.output.empty()) {
    std::cerr << "wrote " << g.output << " (" << result->vertex_count() << " vertices, " << result->simplex_total()
              << " simplices)\n";
  }
  return kPass;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::vector<std::string> inputs;
  std::vector<std::string> weights;
  std::string holonomy;
  std::string map;
  bool all_builtins = false;
  int random = 0;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  const auto ranks = g.ranks();
  Reports out;
  auto one_weight = [&](const ComplexPtr& x) {
    if (a.weights.size() > 1) throw InputError("verify " + a.suite + " takes at most one weight file");
    return load_weights(x, a.weights.empty() ? "" : a.weights[0], a.holonomy);
  };
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (a.inputs.size() < lo || a.inputs.size() > hi) {
      throw InputError("verify " + a.suite + ": wrong number of inputs");
    }
  };
  auto named = [](Report r, std::string subject) {
    r.subject = std::move(subject);
    return r;
  };

  if (a.suite == "kunneth") {
    need(2, 2);
    const auto l = load_complex(a.inputs[0]);
    const auto r = load_complex(a.inputs[1]);
    if (a.weights.size() != 0 && a.weights.size() != 2) throw InputError("verify kunneth takes 0 or 2 weight files");
    const auto wl = a.weights.empty() ? WeightCocycle::trivial(l.x) : io::read_weights(a.weights[0], l.x);
    const auto wr = a.weights.empty() ? WeightCocycle::trivial(r.x) : io::read_weights(a.weights[1], r.x);
    out.items.push_back(named(verify_kunneth(l.x, wl, r.x, wr, ranks), l.name + " x " + r.name));
  } else if (a.suite == "pd") {
    need(1, 1);
    const auto x = load_complex(a.inputs[0]);
    const auto cert = orientable_certificate(x.x);
    if (!cert) {
      throw PreconditionError("refusing Poincare duality on " + x.name +
                              ": no orientation certificate (not a closed connected orientable pseudomanifold)");
    }
    out.items.push_back(named(verify_poincare(*cert, one_weight(x.x), ranks), x.name));
  } else if (a.suite == "euler" || a.suite == "h0") {
    std::vector<Loaded> spaces;
    for (const auto& s : a.inputs) spaces.push_back(load_complex(s));
    if (a.all_builtins) {
      for (const auto& n : builtin_names()) spaces.push_back({n, named_space(n)});
    }
    if (spaces.empty()) throw InputError("verify " + a.suite + " needs complexes or --all-builtins");
    std::mt19937_64 rng(g.seed);
    for (const auto& [name, x] : spaces) {
      auto check = [&](const WeightCocycle& w, const std::string& label) {
        auto r = a.suite == "euler" ? verify_euler(x, w, ranks) : verify_h0(x, w, ranks);
        out.items.push_back(named(std::move(r), name + ", " + label));
      };
      if (a.random == 0) {
        check(one_weight(x), a.weights.empty() && a.holonomy.empty() ? "trivial system" : "given system");
        continue;
      }
      const auto classes = integral_class_basis(x);
      for (int i = 0; i < a.random; ++i) check(random_weights(x, classes, rng), "random system " + std::to_string(i));
    }
  } else if (a.suite == "mv") {
    if (a.inputs.size() == 1) {
      const auto x = load_complex(a.inputs[0]);
      std::pair<ComplexPtr, ComplexPtr> split;
      if (x.name == "s2_4") {
        split = sphere_hemispheres(x.x);
      } else if (x.name == "t2_7") {
        split = torus_annuli(x.x);
      } else {
        throw InputError("no built-in cover for " + x.name + "; pass X U V");
      }
      out.items.push_back(named(verify_mayer_vietoris(x.x, split.first, split.second, one_weight(x.x), ranks),
                                x.name + " (built-in cover)"));
    } else {
      need(3, 3);
      const auto x = load_complex(a.inputs[0]);
      const auto u = load_complex(a.inputs[1]);
      const auto v = load_complex(a.inputs[2]);
      auto u_sub = share(subcomplex(*x.x, u.x->maximal_simplices()));
      auto v_sub = share(subcomplex(*x.x, v.x->maximal_simplices()));
      out.items.push_back(named(verify_mayer_vietoris(x.x, u_sub, v_sub, one_weight(x.x), ranks),
                                x.name + " = " + u.name + " u " + v.name));
    }
  } else if (a.suite == "les") {
    need(1, 2);
    const auto x = load_complex(a.inputs[0]);
    ComplexPtr sub;
    std::string sub_name;
    if (a.inputs.size() == 2) {
      const auto s = load_complex(a.inputs[1]);
      sub = share(subcomplex(*x.x, s.x->maximal_simplices()));
      sub_name = s.name;
    } else if (x.name == "disk") {
      sub = share(subcomplex(*x.x, {{0, 1}, {1, 2}, {0, 2}}));
      sub_name = "boundary";
    } else {
      throw InputError("verify les needs X A (or builtin:disk)");
    }
    out.items.push_back(named(les_of_pair(x.x, sub, one_weight(x.x), ranks), "(" + x.name + ", " + sub_name + ")"));
  } else if (a.suite == "blowup") {
    need(1, 1);
    const auto x = load_complex(a.inputs[0]);
    WeightCocycle w = WeightCocycle::trivial(x.x);
    if (!a.holonomy.empty() && a.weights.empty() && (x.name == "t3" || x.name == "t4")) {
      // Holonomy around the first circle factor of the product torus.
      const std::size_t factors = x.name == "t3" ? 3 : 4;
      w = pullback(torus_projection(x.x, factors, 0), circle_character(share(circle(3)), parse_rational(a.holonomy)));
    } else {
      w = one_weight(x.x);
    }
    out.items.push_back(named(verify_blowup_dims(x.x, w, ranks), x.name));
  } else if (a.suite == "lefschetz") {
    need(1, 1);
    const auto x = load_complex(a.inputs[0]);
    SimplicialMap f = SimplicialMap::identity(x.x);
    if (!a.map.empty()) f = {x.x, x.x, parse_images(a.map)};
    const auto diag = f.validate();
    if (!diag.ok()) throw InputError(diag.issues.front());
    const auto w = one_weight(x.x);
    const auto gauge = find_gauge(w, pullback(f, w));
    if (!gauge) throw PreconditionError("the map does not preserve the weight system up to gauge");
    out.items.push_back(named(verify_lefschetz(f, w, *gauge, ranks), x.name + (a.map.empty() ? ", identity" : ", map " + a.map)));
  } else {
    throw InputError("unknown suite '" + a.suite + "' (kunneth, pd, euler, mv, les, h0, blowup, lefschetz)");
  }
  return out.emit(g);
}

// ---------------------------------------------------------------------------

int cmd_selftest(const Global& g, const std::vector<int>& only) {
  AcceptanceOptions opts;
  opts.seed = g.seed;
  if (g.progress) opts.progress = [](const std::string& s) { std::cerr << "[progress] " << s << "\n"; };

  std::ostringstream text;
  io::Json doc = io::Json::object();
  doc["seed"] = g.seed;
  io::Json items = io::Json::array();
  bool pass = true;
  auto record = [&](const CriterionResult& r, const std::string& label) {
    text << label << (r.pass ? " [PASS] " : " [FAIL] ") << r.title << " (" << r.checks << " checks)\n";
    for (const auto& f : r.failures) text << "    failure: " << f << "\n";
    for (const auto& n : r.notes) text << "    note: " << n << "\n";
    std::cerr << "[time] " << label << ": " << r.seconds << " s\n";
    io::Json j = io::Json::object();
    j["id"] = r.id;
    j["title"] = r.title;
    j["pass"] = r.pass;
    j["checks"] = r.checks;
    j["failures"] = r.failures;
    j["notes"] = r.notes;
    items.push_back(std::move(j));
    pass = pass && r.pass;
  };
  record(check_builtin_data(), "builtin data");
  for (const auto& r : run_acceptance(opts, only)) record(r, "criterion " + std::to_string(r.id));
  doc["criteria"] = std::move(items);
  doc["pass"] = pass;
  text << (pass ? "selftest: pass" : "selftest: FAIL") << "\n";
  std::cout << text.str();
  if (!g.output.empty()) write_text(g.output, doc.dump(2) + "\n");
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted (Morse-Novikov) cohomology of simplicial complexes in exact arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--output", g.output, "write the result or JSON report to FILE");
  app.add_flag("--fast-modular", g.fast_modular, "ranks modulo three random 30-bit primes (probabilistic)");
  app.add_flag("--progress", g.progress, "report progress and timings on stderr");

  std::string complex_spec;
  std::string weight_path;
  std::string holonomy;
  auto* betti = app.add_subcommand("betti", "Betti numbers of a complex with a weight system");
  betti->add_option("complex", complex_spec, "complex file or builtin:NAME")->required();
  betti->add_option("weights", weight_path, "weight file");
  betti->add_option("--holonomy", holonomy, "character t on the first H^1 class");

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "construct a complex and write it as JSON");
  build->add_option("kind", build_args.kind, "product, connect-sum, mapping-torus, subdivide, cone, suspension, "
                                             "disjoint-union or builtin")
      ->required();
  build->add_option("inputs", build_args.inputs, "input complexes (files or builtin:NAME); a name for builtin");
  build->add_option("-w,--weights", build_args.weights, "weight file per input");
  build->add_option("--map", build_args.map, "vertex images for mapping-torus, e.g. 0,2,1");
  build->add_option("--weights-output", build_args.weights_output, "where to write the resulting weight system");
  build->add_option("-o", g.output, "output file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check one identity and print a report");
  verify->add_option("suite", verify_args.suite, "kunneth, pd, euler, mv, les, h0, blowup or lefschetz")->required();
  verify->add_option("inputs", verify_args.inputs, "complexes (files or builtin:NAME)");
  verify->add_option("-w,--weights", verify_args.weights, "weight file(s)");
  verify->add_option("--holonomy", verify_args.holonomy, "character t on the first H^1 class (first factor for t3/t4)");
  verify->add_option("--map", verify_args.map, "vertex images of a self-map for lefschetz");
  verify->add_flag("--all-builtins", verify_args.all_builtins, "add every builtin complex");
  verify->add_option("--random", verify_args.random, "check N random weight systems per complex");

  std::vector<int> only;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--criterion", only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*betti) return cmd_betti(g, complex_spec, weight_path, holonomy);
    if (*build) return cmd_build(g, build_args);
    if (*verify) return cmd_verify(g, verify_args);
    if (*selftest) return cmd_selftest(g, only);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const GaugeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
