#pragma once

// YAML run configuration; grammar in docs/config.md. Every numeric field is
// read as a string and parsed exactly, so 0.1 means 1/10.

#include <cstdint>
#include <optional>
#include <string>

#include "levymom/model.hpp"
#include "levymom/polynomial.hpp"
#include "levymom/moments.hpp"

namespace levymom {

struct RunConfig {
  LevyModel model;
  PushSpec push;
  ScalarMode scalar = ScalarMode::Rational;
  std::uint64_t seed = 20240521;
  /// FNV-1a 64 of the configuration text.
  std::uint64_t hash = 0;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Parses a push given on the command line: "same", "det:X", "exp:RATE",
/// "gamma:SHAPE,RATE", "uniform:A,B", "moments:M1,M2,...".
PushSpec parse_push(const std::string& text);

/// Polynomial in x with rational coefficients: "1", "x", "2x^2 + 3x + 1",
/// "1/2*x^3 - x".
Polynomial<Rational> parse_polynomial(const std::string& text);

/// "A:<poly>" or "D:<poly>".
FunctionalSpec<Rational> parse_functional(const std::string& text);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace levymom
