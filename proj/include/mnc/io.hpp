/**
 * JSON documents for complexes, weight systems and reports.
 *
 * Complex:  {"name": "t2_7", "vertex_count": 7, "maximal_simplices": [[0,1,3], ...]}
 * Weights:  {"weights": {"0-2": "2", "1-2": "3/2"}}            (missing edges weigh 1)
 *       or  {"edges": {"0-2": 1}, "base": "2"}                  (weight = base^m, missing m = 0)
 */
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mnc/complex.hpp"
#include "mnc/local_system.hpp"
#include "mnc/verify.hpp"

namespace mnc::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

inline Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    if (auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw InputError(source + ":" + std::to_string(line_at(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + what);
  }
}

/// Line of the first occurrence of `needle` (compared with whitespace
/// removed) at or after the first occurrence of `anchor`.
inline std::size_t locate(std::string_view text, std::string_view anchor, std::string_view needle) {
  std::string stripped;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
    stripped.push_back(text[i]);
    origin.push_back(i);
  }
  std::size_t from = stripped.find(anchor);
  if (from == std::string::npos) from = 0;
  const std::size_t at = stripped.find(needle, from);
  if (at == std::string::npos) return 0;
  return line_at(text, origin[at]);
}

inline std::string where(const std::string& source, std::size_t line) {
  return line == 0 ? source + ": " : source + ":" + std::to_string(line) + ": ";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Simplex parse_edge_key(const std::string& key) {
  const auto dash = key.find('-');
  auto number = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("edge key '" + key + "' is not of the form i-j");
    }
    return static_cast<Vertex>(std::stoul(std::string(s)));
  };
  if (dash == std::string::npos) throw InputError("edge key '" + key + "' is not of the form i-j");
  const Vertex i = number(std::string_view(key).substr(0, dash));
  const Vertex j = number(std::string_view(key).substr(dash + 1));
  if (i >= j) throw InputError("edge key '" + key + "' must have i < j");
  return {i, j};
}

inline std::string edge_key(const Simplex& e) { return std::to_string(e[0]) + "-" + std::to_string(e[1]); }

inline Rational rational_value(const Json& v, const std::string& key) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw InputError("value of '" + key + "' must be an integer or a \"p/q\" string");
}

}  // namespace detail

struct ComplexDocument {
  std::string name;
  Complex complex;
};

inline ComplexDocument parse_complex(std::string_view text, const std::string& source = "<input>") {
  const Json doc = detail::parse_json(text, source);
  if (!doc.is_object()) throw InputError(detail::where(source, 1) + "expected a JSON object");
  ComplexDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError(detail::where(source, 0) + "name must be a string");
    out.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("vertex_count") || !doc["vertex_count"].is_number_unsigned()) {
    throw InputError(detail::where(source, detail::locate(text, "", "\"vertex_count\"")) +
                     "vertex_count must be a non-negative integer");
  }
  const auto n = doc["vertex_count"].get<std::size_t>();
  if (!doc.contains("maximal_simplices") || !doc["maximal_simplices"].is_array()) {
    throw InputError(detail::where(source, 0) + "maximal_simplices must be an array of integer arrays");
  }
  std::vector<Simplex> gens;
  for (const auto& entry : doc["maximal_simplices"]) {
    const std::string shown = entry.dump();
    const auto line = detail::locate(text, "\"maximal_simplices\"", shown);
    auto fail = [&](const std::string& why) {
      throw InputError(detail::where(source, line) + "simplex " + shown + " " + why);
    };
    if (!entry.is_array() || entry.empty()) fail("must be a non-empty array of vertex indices");
    Simplex s;
    for (const auto& v : entry) {
      if (!v.is_number_unsigned()) fail("has a non-integer or negative entry");
      const auto k = v.get<std::uint64_t>();
      if (k >= n) fail("has vertex " + std::to_string(k) + " outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
      s.push_back(static_cast<Vertex>(k));
    }
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i - 1] >= s[i]) fail("is not strictly increasing");
    }
    gens.push_back(std::move(s));
  }
  out.complex = Complex::from_maximal(n, gens);
  return out;
}

inline ComplexDocument read_complex(const std::string& path) { return parse_complex(detail::read_file(path), path); }

inline std::string write_complex(const Complex& x, const std::string& name = "") {
  Json doc = Json::object();
  if (!name.empty()) doc["name"] = name;
  doc["vertex_count"] = x.vertex_count();
  Json gens = Json::array();
  for (const auto& s : x.maximal_simplices()) gens.push_back(s);
  doc["maximal_simplices"] = std::move(gens);
  // One simplex per line keeps large documents diffable.
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : doc.items()) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + Json(key).dump() + ": ";
    if (key != "maximal_simplices") {
      out += value.dump();
      continue;
    }
    out += "[";
    for (std::size_t i = 0; i < value.size(); ++i) out += (i ? ",\n    " : "\n    ") + value[i].dump();
    out += value.empty() ? "]" : "\n  ]";
  }
  return out + "\n}\n";
}

inline WeightCocycle parse_weights(std::string_view text, const ComplexPtr& x, const std::string& source = "<input>") {
  const Json doc = detail::parse_json(text, source);
  if (!doc.is_object()) throw InputError(detail::where(source, 1) + "expected a JSON object");
  const bool explicit_form = doc.contains("weights");
  const bool integral_form = doc.contains("edges") || doc.contains("base");
  if (explicit_form == integral_form) {
    throw InputError(detail::where(source, 0) + "give either \"weights\" or both \"edges\" and \"base\"");
  }
  const Json& table = explicit_form ? doc["weights"] : doc["edges"];
  if (!table.is_object()) throw InputError(detail::where(source, 0) + "edge table must be an object keyed by \"i-j\"");

  auto edge_index = [&](const std::string& key) {
    const auto line = detail::locate(text, "", "\"" + key + "\"");
    try {
      const Simplex e = detail::parse_edge_key(key);
      auto idx = x->index_of(e);
      if (!idx) throw InputError("'" + key + "' is not an edge of the complex");
      return *idx;
    } catch (const InputError& err) {
      throw InputError(detail::where(source, line) + err.what());
    }
  };

  WeightCocycle w;
  if (explicit_form) {
    std::vector<Rational> weights(x->count(1), Rational(1));
    for (const auto& [key, value] : table.items()) {
      const auto idx = edge_index(key);
      try {
        weights[idx] = detail::rational_value(value, key);
        if (weights[idx] <= 0) throw InputError("weight of '" + key + "' must be positive");
      } catch (const InputError& err) {
        throw InputError(detail::where(source, detail::locate(text, "", "\"" + key + "\"")) + err.what());
      }
    }
    w = WeightCocycle(x, std::move(weights));
  } else {
    if (!doc.contains("base")) throw InputError(detail::where(source, 0) + "integral form needs \"base\"");
    std::vector<long long> m(x->count(1), 0);
    for (const auto& [key, value] : table.items()) {
      const auto idx = edge_index(key);
      if (!value.is_number_integer()) {
        throw InputError(detail::where(source, detail::locate(text, "", "\"" + key + "\"")) + "exponent of '" + key +
                         "' must be an integer");
      }
      m[idx] = value.get<long long>();
    }
    try {
      w = from_integral_class(x, m, detail::rational_value(doc["base"], "base"));
    } catch (const InputError& err) {
      throw InputError(detail::where(source, 0) + err.what());
    }
  }
  const auto diag = check_cocycle(w);
  if (!diag.ok()) throw InputError(detail::where(source, 0) + diag.issues.front());
  return w;
}

inline WeightCocycle read_weights(const std::string& path, const ComplexPtr& x) {
  return parse_weights(detail::read_file(path), x, path);
}

/// Explicit form listing every edge.
inline std::string write_weights(const WeightCocycle& w) {
  Json table = Json::object();
  const auto& edges = w.complex()->simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e) table[detail::edge_key(edges[e])] = to_string(w.edge_weights()[e]);
  Json doc = Json::object();
  doc["weights"] = std::move(table);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reports

/// `timing` controls whether wall-clock seconds are emitted; without it the
/// output is a deterministic function of the inputs.
inline Json to_json(const Report& r, bool timing) {
  Json j = Json::object();
  j["suite"] = r.suite;
  j["claim"] = r.claim;
  j["subject"] = r.subject;
  j["pass"] = r.pass;
  j["probabilistic"] = r.probabilistic;
  Json lhs = Json::array();
  Json rhs = Json::array();
  for (const auto& q : r.lhs) lhs.push_back(to_string(q));
  for (const auto& q : r.rhs) rhs.push_back(to_string(q));
  j["lhs"] = std::move(lhs);
  j["rhs"] = std::move(rhs);
  j["failures"] = r.failures;
  j["notes"] = r.notes;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

inline std::string to_text(const Report& r, bool timing) {
  auto join = [](const std::vector<Rational>& v) {
    std::string out;
    for (const auto& q : v) out += (out.empty() ? "" : " ") + to_string(q);
    return out.empty() ? std::string("-") : out;
  };
  std::ostringstream out;
  out << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.claim << "\n";
  if (!r.subject.empty()) out << "  subject: " << r.subject << "\n";
  out << "  lhs: " << join(r.lhs) << "\n";
  if (!r.rhs.empty()) out << "  rhs: " << join(r.rhs) << "\n";
  if (r.probabilistic) out << "  probabilistic: ranks computed modulo primes only\n";
  for (const auto& f : r.failures) out << "  failure: " << f << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  if (timing) out << "  time: " << r.seconds << " s\n";
  return out.str();
}

}  // namespace mnc::io
