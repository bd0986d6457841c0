#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "levymom/config.hpp"
#include "levymom/output.hpp"
#include "support.hpp"

using namespace levymom;
using namespace testsupport;

TEST_CASE("polynomial mini-grammar") {
  CHECK(parse_polynomial("1") == P(0));
  CHECK(parse_polynomial("x") == P(1));
  CHECK(parse_polynomial("2x^2 + 3x + 1") == poly({1, 3, 2}));
  CHECK(parse_polynomial("1/2*x^3 - x") == poly({0, -1, 0, Q(1, 2)}));
  CHECK(parse_polynomial("x^2 + x^2") == poly({0, 0, 2}));
  CHECK(parse_polynomial("0").is_zero());
  CHECK(parse_polynomial("-x") == poly({0, -1}));
  CHECK(parse_polynomial("0.25x") == poly({0, Q(1, 4)}));
  CHECK_THROWS_AS(parse_polynomial(""), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x^"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("2y"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x +"), ParseError);
}

TEST_CASE("functional specs") {
  auto a = parse_functional("A:x");
  CHECK(a.kind == FunctionalKind::Area);
  CHECK(a.poly == P(1));
  auto d = parse_functional("D:1");
  CHECK(d.kind == FunctionalKind::JumpSum);
  CHECK(d.poly == P(0));
  CHECK_THROWS_AS(parse_functional("B:x"), ParseError);
  CHECK_THROWS_AS(parse_functional("A"), ParseError);
}

TEST_CASE("exact decimal parsing") {
  CHECK(parse_rational("0.1") == Q(1, 10));
  CHECK(parse_rational("-3/6") == Q(-1, 2));
  CHECK(parse_rational("1e-3") == Q(1, 1000));
  CHECK(parse_rational("2.5E+2") == 250);
  CHECK_THROWS_AS(parse_rational("inf"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_FALSE(parse_extended("inf").finite());
}

TEST_CASE("push overrides") {
  CHECK(parse_push("same").is_same_as_jumps());
  CHECK(parse_push("det:3/2").deterministic_value()->x == Q(3, 2));
  CHECK(push_moment(parse_push("exp:2"), 1) == Q(1, 2));
  CHECK(push_moment(parse_push("gamma:2,2"), 2) == Q(3, 2));
  CHECK(push_moment(parse_push("uniform:0,2"), 1) == 1);
  CHECK(push_moment(parse_push("moments:1,3"), 2) == 3);
  CHECK_THROWS_AS(parse_push("gamma:2"), ParseError);
  CHECK_THROWS_AS(parse_push("poisson:1"), ParseError);
}

TEST_CASE("YAML configuration") {
  auto cfg = parse_config(R"(
model:
  drift: -1
  sigma2: 0
  jumps:
    kind: parametric
    family: exponential
    rate: 1
    cpp_rate: 0.5
push:
  kind: same-as-jumps
settings:
  scalar: real
  seed: 7
)");
  CHECK(cfg.model.rho() == Q(-1, 2));
  CHECK(cfg.push.is_same_as_jumps());
  CHECK(cfg.scalar == ScalarMode::Real);
  CHECK(cfg.seed == 7);
  CHECK(cfg.hash != 0);

  auto raw = parse_config(R"(
model:
  drift: -2
  jumps: {kind: raw, cpp_rate: inf, eta: [1, 3, inf]}
push: {kind: moments, mu: [1, 2]}
)");
  CHECK_FALSE(raw.model.lambda().finite());
  CHECK_FALSE(raw.model.jumps().eta(3).finite());
  CHECK(raw.scalar == ScalarMode::Rational);

  auto bm = parse_config("model: {drift: -1, sigma2: 2}\npush: {kind: deterministic, x: 1}\n");
  CHECK(bm.model.jumps().no_jumps());
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(parse_config("push: {kind: same}"), ParseError);
  CHECK_THROWS_AS(parse_config("model: {drift: [1, 2]}"), ParseError);
  CHECK_THROWS_AS(parse_config("model: {drift: -1, jumps: {kind: levy}}"), ParseError);
  CHECK_THROWS_AS(parse_config("model: {drift: -1}\npush: {kind: nowhere}"), ParseError);
  CHECK_THROWS_AS(parse_config("model: {drift: -1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("model: {drift: 1}"), InvalidRho);
  CHECK_THROWS_AS(load_config("/nonexistent/levymom.yaml"), ParseError);
}

TEST_CASE("configuration hash identifies the text") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(parse_config("model: {drift: -1}").hash != parse_config("model: {drift: -2}").hash);
}

TEST_CASE("number formatting") {
  CHECK(format_rational(Q(4)) == "4");
  CHECK(format_rational(Q(-20, 3)) == "-20/3");
  CHECK(format_real(1.0L / 3) == "0.33333333333333333");
  CHECK(format_real(0.5L) == "0.5");
  CHECK(format_cell(Cell(true)) == "true");
}

TEST_CASE("JSON output round-trips exact values") {
  Table t{{"name", "value", "approx"}, {}};
  std::vector<Q> values = {Q(572, 3), Q(-1, 7), Q(0), Q(123456789, 1024)};
  for (const auto& v : values) t.add({std::string("v"), v, to_real(v)});
  std::ostringstream os;
  write_json(os, Provenance{"test", 42, ScalarMode::Rational, 5}, t);
  auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["provenance"]["version"] == kArtifactVersion);
  CHECK(doc["provenance"]["config_hash"] == "000000000000002a");
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(parse_rational(doc["rows"][i]["value"].get<std::string>()) == values[i]);
    Real r = std::stold(doc["rows"][i]["approx"].get<std::string>());
    CHECK(static_cast<double>(r) == static_cast<double>(to_real(values[i])));
  }
}

TEST_CASE("CSV output carries the provenance header") {
  Table t{{"k", "v"}, {}};
  t.add({1LL, Q(1, 2)});
  std::ostringstream os;
  write_csv(os, Provenance{"psi", 1, ScalarMode::Real, 9}, t);
  CHECK(os.str() == "# command=psi config_hash=0000000000000001 scalar=real seed=9 version=0.1.0\nk,v\n1,1/2\n");
  CHECK_THROWS_AS(t.add({1LL}), InvalidArgument);
}
