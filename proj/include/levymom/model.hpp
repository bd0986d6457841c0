#pragma once

// Input model: a drifted Brownian motion plus an independent subordinator,
// started from an independent initial push V.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levymom/scalar.hpp"

namespace levymom {

enum class Family { Exponential, Deterministic, Gamma, Uniform };

std::string to_string(Family family);
Family parse_family(std::string_view text);

/// A named positive distribution with closed-form raw moments and LST.
///   Exponential(rate), Deterministic(size), Gamma(shape, rate), Uniform(a, b).
class ParametricLaw {
 public:
  static ParametricLaw exponential(Rational rate);
  static ParametricLaw deterministic(Rational size);
  static ParametricLaw gamma(Rational shape, Rational rate);
  static ParametricLaw uniform(Rational a, Rational b);

  Family family() const { return family_; }
  const Rational& first() const { return p1_; }
  const Rational& second() const { return p2_; }

  /// E X^n, exact.
  Rational raw_moment(unsigned n) const;
  /// E exp(-s X) for s >= 0.
  Real lst(Real s) const;
  /// Density (Deterministic has none and throws).
  Real density(Real x) const;

  std::string describe() const;

  friend bool operator==(const ParametricLaw&, const ParametricLaw&) = default;

 private:
  ParametricLaw(Family family, Rational p1, Rational p2) : family_(family), p1_(std::move(p1)), p2_(std::move(p2)) {}

  Family family_;
  Rational p1_;
  Rational p2_;
};

/// Compound Poisson jumps: rate lambda, jump law given parametrically.
struct ParametricJumps {
  ParametricLaw law;
  Rational rate;
};

/// Jump measure described only by eta_i = integral y^i nu(dy), i = 1, 2, ...
/// Entries may be +inf; once an entry is +inf every later order is too.
/// rate is nu(0, inf): 0 means no jumps, +inf an infinite-activity subordinator.
struct RawMomentJumps {
  std::vector<Extended<Rational>> eta;
  Extended<Rational> rate;
};

class JumpSpec {
 public:
  JumpSpec() : spec_(RawMomentJumps{{}, Extended<Rational>(Rational(0))}) {}
  JumpSpec(ParametricJumps p) : spec_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  JumpSpec(RawMomentJumps r) : spec_(std::move(r)) {}   // NOLINT(google-explicit-constructor)

  static JumpSpec none() { return JumpSpec(); }

  bool is_parametric() const { return std::holds_alternative<ParametricJumps>(spec_); }
  const ParametricJumps* parametric() const { return std::get_if<ParametricJumps>(&spec_); }
  const RawMomentJumps* raw() const { return std::get_if<RawMomentJumps>(&spec_); }

  /// lambda = nu(0, inf), possibly +inf.
  Extended<Rational> lambda() const;
  /// eta_i for i >= 1; throws MissingMoment when not supplied.
  Extended<Rational> eta(unsigned i) const;
  /// Whether the jump part vanishes identically.
  bool no_jumps() const;

  std::string describe() const;

 private:
  std::variant<ParametricJumps, RawMomentJumps> spec_;
};

class LevyModel {
 public:
  LevyModel(Rational drift, Rational sigma2, JumpSpec jumps);

  const Rational& drift() const { return drift_; }
  const Rational& sigma2() const { return sigma2_; }
  const JumpSpec& jumps() const { return jumps_; }
  Extended<Rational> lambda() const { return jumps_.lambda(); }

  /// rho = E J(1) = c + eta_1 (negative for every accepted model).
  const Rational& rho() const { return rho_; }

  /// Compound Poisson without Brownian part and with finite rate.
  bool is_cpp() const;

  /// Laplace exponent phi(alpha) = -log E exp(-alpha J(1)); needs parametric
  /// (or absent) jumps.
  Real phi(Real alpha) const;
  bool phi_evaluable() const;

  std::string describe() const;

 private:
  Rational drift_;
  Rational sigma2_;
  JumpSpec jumps_;
  Rational rho_;
};

struct DeterministicPush {
  Rational x;
};
struct MomentPush {
  std::vector<Rational> mu;  // mu_1, mu_2, ...
};
struct ParametricPush {
  ParametricLaw law;
};
struct SameAsJumpsPush {};

/// Law of the initial push V.
class PushSpec {
 public:
  using Variant = std::variant<DeterministicPush, MomentPush, ParametricPush, SameAsJumpsPush>;

  PushSpec() : spec_(SameAsJumpsPush{}) {}
  PushSpec(Variant v);  // NOLINT(google-explicit-constructor)

  static PushSpec deterministic(Rational x) { return PushSpec(DeterministicPush{std::move(x)}); }
  static PushSpec moments(std::vector<Rational> mu) { return PushSpec(MomentPush{std::move(mu)}); }
  static PushSpec parametric(ParametricLaw law) { return PushSpec(ParametricPush{std::move(law)}); }
  static PushSpec same_as_jumps() { return PushSpec(SameAsJumpsPush{}); }

  const Variant& variant() const { return spec_; }
  bool is_same_as_jumps() const { return std::holds_alternative<SameAsJumpsPush>(spec_); }
  const DeterministicPush* deterministic_value() const { return std::get_if<DeterministicPush>(&spec_); }
  const ParametricLaw* law() const;

  /// Replaces SameAsJumps by the jump law of a parametric CPP model.
  PushSpec resolve(const LevyModel& model) const;

  std::string describe() const;

 private:
  Variant spec_;
};

/// mu_n = E V^n (mu_0 = 1). The push must be resolved.
Rational push_moment(const PushSpec& push, unsigned n);

template <Field T>
T push_moment_as(const PushSpec& push, unsigned n) {
  return field_cast<T>(push_moment(push, n));
}

/// phi_0 .. phi_K: right-derivatives of the Laplace exponent at 0.
template <Field T>
struct PhiTable {
  std::vector<Extended<T>> phi;

  unsigned order() const { return static_cast<unsigned>(phi.size()) - 1; }
  const Extended<T>& operator[](unsigned k) const { return phi.at(k); }
};

/// phi_0 = 0, phi_1 = rho, phi_2 = -(sigma^2 + eta_2), phi_i = (-1)^{i+1} eta_i.
template <Field T>
PhiTable<T> build_phi_table(const LevyModel& model, unsigned K) {
  if (K < 1) throw InvalidModel("phi table order must be at least 1");
  PhiTable<T> table;
  table.phi.reserve(K + 1);
  table.phi.emplace_back(FieldTraits<T>::from_int(0));
  table.phi.emplace_back(field_cast<T>(model.rho()));
  for (unsigned i = 2; i <= K; ++i) {
    Extended<Rational> eta = model.jumps().eta(i);
    int sign = (i % 2 == 0) ? -1 : 1;  // (-1)^{i+1}
    if (!eta.finite()) {
      table.phi.push_back(Extended<T>::signed_inf(sign));
      continue;
    }
    Rational value = eta.value();
    if (i == 2) value += model.sigma2();
    if (sign < 0) value = -value;
    table.phi.emplace_back(field_cast<T>(value));
  }
  return table;
}

}  // namespace levymom
