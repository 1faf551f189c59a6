#include <random>

#include <catch_amalgamated.hpp>

#include "mnc/io.hpp"
#include "mnc/random.hpp"
#include "mnc/spaces.hpp"

using namespace mnc;

namespace {

std::string sample(const std::string& name) { return std::string(MNC_SAMPLES_DIR) + "/" + name; }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("complexes round-trip") {
  for (const auto& [name, x] : suite_complexes()) {
    INFO(name);
    const auto text = io::write_complex(*x, name);
    const auto doc = io::parse_complex(text);
    CHECK(doc.name == name);
    CHECK(doc.complex == *x);
    CHECK(io::write_complex(doc.complex, doc.name) == text);
  }
  CHECK(io::write_complex(*named_space("s2_4")).find("\"vertex_count\": 4") != std::string::npos);
}

TEST_CASE("weights round-trip") {
  std::mt19937_64 rng(3);
  for (const auto& [name, x] : suite_complexes()) {
    INFO(name);
    const auto w = random_weights(x, rng);
    CHECK(io::parse_weights(io::write_weights(w), x) == w);
  }
}

TEST_CASE("weight file forms") {
  auto c = share(circle(3));
  const auto w = io::read_weights(sample("s1_3_holonomy2.json"), c);
  CHECK(holonomy(w, {0, 1, 2, 0}) == 2);
  CHECK(w.weight(0, 1) == 1);

  const auto annulus = share(io::read_complex(sample("annulus.json")).complex);
  const auto integral = io::read_weights(sample("annulus_integral.json"), annulus);
  CHECK(integral.weight(0, 2) == Rational(3, 2));
  CHECK(integral.weight(0, 1) == 1);
  CHECK(check_cocycle(integral).ok());

  auto disk = named_space("disk");
  CHECK(io::read_weights(sample("disk_cocycle.json"), disk).weight(0, 2) == 6);
}

TEST_CASE("input errors name the file and line") {
  CHECK(error_of([] { io::read_complex(sample("bad_simplex.json")); }).find("[2,1] is not strictly increasing") !=
        std::string::npos);
  CHECK(error_of([] { io::read_complex(sample("bad_syntax.json")); }).find("bad_syntax.json:5") != std::string::npos);

  const std::string outside = "{\n  \"vertex_count\": 2,\n  \"maximal_simplices\": [\n    [0, 2]\n  ]\n}\n";
  const auto msg = error_of([&] { io::parse_complex(outside, "x.json"); });
  CHECK(msg.find("x.json:4") != std::string::npos);
  CHECK(msg.find("outside 0..1") != std::string::npos);
  CHECK_FALSE(error_of([] { io::parse_complex("[1, 2]"); }).empty());
  CHECK_FALSE(error_of([] { io::parse_complex("{\"vertex_count\": -1, \"maximal_simplices\": []}"); }).empty());

  auto c = share(circle(3));
  CHECK(error_of([&] { io::parse_weights("{\"weights\": {\"0-3\": 2}}", c); }).find("'0-3' is not an edge") !=
        std::string::npos);
  CHECK_FALSE(error_of([&] { io::parse_weights("{\"weights\": {\"1-0\": 2}}", c); }).empty());
  CHECK_FALSE(error_of([&] { io::parse_weights("{\"weights\": {\"0-1\": \"-2\"}}", c); }).empty());
  CHECK_FALSE(error_of([&] { io::parse_weights("{\"weights\": {}, \"base\": 2}", c); }).empty());
  CHECK_FALSE(error_of([&] { io::parse_weights("{\"edges\": {\"0-1\": 1.5}, \"base\": 2}", c); }).empty());

  auto disk = named_space("disk");
  CHECK(error_of([&] { io::read_weights(sample("disk_not_cocycle.json"), disk); }).find("[0,1,2]") !=
        std::string::npos);
  CHECK(error_of([&] { io::read_complex(sample("missing.json")); }).find("missing.json") != std::string::npos);
}

TEST_CASE("reports serialize deterministically") {
  Report r;
  r.suite = "euler";
  r.claim = "twisted and simplicial Euler characteristics agree";
  r.subject = "s1_3";
  r.lhs = {0};
  r.rhs = {0};
  r.notes = {"betti 0 0"};
  r.seconds = 1.5;
  const auto text = io::to_text(r, false);
  CHECK(text == "[PASS] euler: twisted and simplicial Euler characteristics agree\n  subject: s1_3\n  lhs: 0\n"
                "  rhs: 0\n  note: betti 0 0\n");
  CHECK(io::to_text(r, true).find("time: 1.5 s") != std::string::npos);
  const auto j = io::to_json(r, false);
  CHECK(j.dump() == io::to_json(r, false).dump());
  CHECK_FALSE(j.contains("seconds"));
  CHECK(j["lhs"] == io::Json::array({"0"}));
  r.fail("mismatch");
  CHECK(io::to_text(r, false).rfind("[FAIL]", 0) == 0);
}
