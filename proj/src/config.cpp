#include "levymom/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <fstream>
#include <sstream>

namespace levymom {
namespace {

std::string scalar_text(const YAML::Node& node, const std::string& where) {
  if (!node || !node.IsScalar()) throw ParseError("expected a scalar at '" + where + "'");
  return node.as<std::string>();
}

Rational rational_field(const YAML::Node& parent, const std::string& key, const std::string& where) {
  const YAML::Node node = parent[key];
  if (!node) throw ParseError("missing field '" + where + "." + key + "'");
  return parse_rational(scalar_text(node, where + "." + key));
}

ParametricLaw parse_law(const YAML::Node& node, const std::string& where) {
  Family family = parse_family(scalar_text(node["family"], where + ".family"));
  switch (family) {
    case Family::Exponential: return ParametricLaw::exponential(rational_field(node, "rate", where));
    case Family::Deterministic: return ParametricLaw::deterministic(rational_field(node, "size", where));
    case Family::Gamma:
      return ParametricLaw::gamma(rational_field(node, "shape", where), rational_field(node, "rate", where));
    case Family::Uniform: return ParametricLaw::uniform(rational_field(node, "a", where), rational_field(node, "b", where));
  }
  throw ParseError("unreachable family");
}

JumpSpec parse_jumps(const YAML::Node& node) {
  if (!node) return JumpSpec::none();
  std::string kind = node["kind"] ? scalar_text(node["kind"], "model.jumps.kind") : "parametric";
  if (kind == "none") return JumpSpec::none();
  if (kind == "parametric") {
    return ParametricJumps{parse_law(node, "model.jumps"), rational_field(node, "cpp_rate", "model.jumps")};
  }
  if (kind == "raw" || kind == "moments") {
    RawMomentJumps raw;
    raw.rate = parse_extended(scalar_text(node["cpp_rate"], "model.jumps.cpp_rate"));
    const YAML::Node eta = node["eta"];
    if (eta) {
      if (!eta.IsSequence()) throw ParseError("model.jumps.eta must be a list");
      for (const auto& e : eta) raw.eta.push_back(parse_extended(scalar_text(e, "model.jumps.eta[]")));
    }
    return raw;
  }
  throw ParseError("unknown jump kind '" + kind + "' (parametric, raw, none)");
}

PushSpec parse_push_node(const YAML::Node& node) {
  if (!node) return PushSpec::same_as_jumps();
  std::string kind = scalar_text(node["kind"], "push.kind");
  if (kind == "same-as-jumps" || kind == "same") return PushSpec::same_as_jumps();
  if (kind == "deterministic") return PushSpec::deterministic(rational_field(node, "x", "push"));
  if (kind == "moments") {
    const YAML::Node mu = node["mu"];
    if (!mu || !mu.IsSequence()) throw ParseError("push.mu must be a list");
    std::vector<Rational> values;
    for (const auto& m : mu) values.push_back(parse_rational(scalar_text(m, "push.mu[]")));
    return PushSpec::moments(std::move(values));
  }
  if (kind == "parametric") return PushSpec::parametric(parse_law(node, "push"));
  throw ParseError("unknown push kind '" + kind + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("configuration is not valid YAML: ") + e.what());
  }
  const YAML::Node model = root["model"];
  if (!model) throw ParseError("configuration needs a 'model' section");
  Rational drift = rational_field(model, "drift", "model");
  Rational sigma2 = model["sigma2"] ? rational_field(model, "sigma2", "model") : Rational(0);
  RunConfig cfg{LevyModel(drift, sigma2, parse_jumps(model["jumps"])), parse_push_node(root["push"])};
  if (const YAML::Node settings = root["settings"]) {
    if (settings["scalar"]) cfg.scalar = parse_scalar_mode(scalar_text(settings["scalar"], "settings.scalar"));
    if (settings["seed"]) cfg.seed = std::stoull(scalar_text(settings["seed"], "settings.seed"));
  }
  cfg.hash = fnv1a64(text);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

PushSpec parse_push(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::vector<std::string> args = colon == std::string::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), ',');
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw ParseError("push '" + text + "' needs " + std::to_string(n) + " argument(s)");
  };
  if (kind == "same") return PushSpec::same_as_jumps();
  if (kind == "det") {
    need(1);
    return PushSpec::deterministic(parse_rational(args[0]));
  }
  if (kind == "exp") {
    need(1);
    return PushSpec::parametric(ParametricLaw::exponential(parse_rational(args[0])));
  }
  if (kind == "gamma") {
    need(2);
    return PushSpec::parametric(ParametricLaw::gamma(parse_rational(args[0]), parse_rational(args[1])));
  }
  if (kind == "uniform") {
    need(2);
    return PushSpec::parametric(ParametricLaw::uniform(parse_rational(args[0]), parse_rational(args[1])));
  }
  if (kind == "moments") {
    std::vector<Rational> mu;
    for (const auto& a : args) mu.push_back(parse_rational(a));
    return PushSpec::moments(std::move(mu));
  }
  throw ParseError("unknown push '" + text + "'");
}

Polynomial<Rational> parse_polynomial(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty polynomial");

  std::vector<Rational> coeffs;
  std::size_t i = 0;
  while (i < s.size()) {
    Rational sign(1);
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i != 0) {
      throw ParseError("expected '+' or '-' in polynomial '" + text + "'");
    }
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '/')) ++i;
    Rational coef = start == i ? Rational(1) : parse_rational(s.substr(start, i - start));
    if (i < s.size() && s[i] == '*') ++i;
    unsigned power = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t ps = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (ps == i) throw ParseError("missing exponent in polynomial '" + text + "'");
        power = static_cast<unsigned>(std::stoul(s.substr(ps, i - ps)));
      }
    } else if (start == i) {
      throw ParseError("malformed term in polynomial '" + text + "'");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, Rational(0));
    coeffs[power] += sign * coef;
  }
  return Polynomial<Rational>(std::move(coeffs));
}

FunctionalSpec<Rational> parse_functional(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("functional '" + text + "' must look like A:<poly> or D:<poly>");
  std::string kind = text.substr(0, colon);
  Polynomial<Rational> p = parse_polynomial(text.substr(colon + 1));
  if (kind == "A") return FunctionalSpec<Rational>::area(std::move(p));
  if (kind == "D") return FunctionalSpec<Rational>::jump_sum(std::move(p));
  throw ParseError("functional kind must be A or D, got '" + kind + "'");
}

}  // namespace levymom
