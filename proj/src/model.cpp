#include "levymom/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace levymom {

std::string to_string(Family family) {
  switch (family) {
    case Family::Exponential: return "exponential";
    case Family::Deterministic: return "deterministic";
    case Family::Gamma: return "gamma";
    case Family::Uniform: return "uniform";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "exponential" || t == "exp") return Family::Exponential;
  if (t == "deterministic" || t == "constant" || t == "det") return Family::Deterministic;
  if (t == "gamma") return Family::Gamma;
  if (t == "uniform") return Family::Uniform;
  throw ParseError("unknown distribution family '" + t + "'");
}

// ---------------------------------------------------------------- ParametricLaw

ParametricLaw ParametricLaw::exponential(Rational rate) {
  if (sgn(rate) <= 0) throw InvalidModel("exponential rate must be positive");
  return ParametricLaw(Family::Exponential, std::move(rate), Rational(0));
}

ParametricLaw ParametricLaw::deterministic(Rational size) {
  if (sgn(size) <= 0) throw InvalidModel("deterministic size must be positive");
  return ParametricLaw(Family::Deterministic, std::move(size), Rational(0));
}

ParametricLaw ParametricLaw::gamma(Rational shape, Rational rate) {
  if (sgn(shape) <= 0 || sgn(rate) <= 0) throw InvalidModel("gamma shape and rate must be positive");
  return ParametricLaw(Family::Gamma, std::move(shape), std::move(rate));
}

ParametricLaw ParametricLaw::uniform(Rational a, Rational b) {
  if (sgn(a) < 0 || !(a < b)) throw InvalidModel("uniform law needs 0 <= a < b");
  return ParametricLaw(Family::Uniform, std::move(a), std::move(b));
}

Rational ParametricLaw::raw_moment(unsigned n) const {
  Rational m(1);
  switch (family_) {
    case Family::Exponential:
      for (unsigned j = 1; j <= n; ++j) m *= Rational(j) / p1_;
      break;
    case Family::Deterministic:
      for (unsigned j = 0; j < n; ++j) m *= p1_;
      break;
    case Family::Gamma:
      for (unsigned j = 0; j < n; ++j) m *= (p1_ + j) / p2_;
      break;
    case Family::Uniform: {
      Rational an(1), bn(1);
      for (unsigned j = 0; j <= n; ++j) {
        an *= p1_;
        bn *= p2_;
      }
      m = (bn - an) / (Rational(n + 1) * (p2_ - p1_));
      break;
    }
  }
  m.canonicalize();
  return m;
}

Real ParametricLaw::lst(Real s) const {
  Real a = to_real(p1_);
  Real b = to_real(p2_);
  switch (family_) {
    case Family::Exponential: return a / (a + s);
    case Family::Deterministic: return std::exp(-a * s);
    case Family::Gamma: return std::pow(b / (b + s), a);
    case Family::Uniform:
      if (s == 0) return 1;
      return -std::exp(-a * s) * std::expm1(-(b - a) * s) / (s * (b - a));
  }
  return 0;
}

Real ParametricLaw::density(Real x) const {
  Real a = to_real(p1_);
  Real b = to_real(p2_);
  switch (family_) {
    case Family::Exponential: return x < 0 ? 0 : a * std::exp(-a * x);
    case Family::Deterministic: throw Unsupported("deterministic law has no density");
    case Family::Gamma:
      if (x <= 0) return 0;
      return std::exp(a * std::log(b) + (a - 1) * std::log(x) - b * x - std::lgamma(a));
    case Family::Uniform: return (x < a || x > b) ? 0 : 1 / (b - a);
  }
  return 0;
}

std::string ParametricLaw::describe() const {
  switch (family_) {
    case Family::Exponential: return "Exponential(rate=" + format_rational(p1_) + ")";
    case Family::Deterministic: return "Deterministic(" + format_rational(p1_) + ")";
    case Family::Gamma: return "Gamma(shape=" + format_rational(p1_) + ", rate=" + format_rational(p2_) + ")";
    case Family::Uniform: return "Uniform(" + format_rational(p1_) + ", " + format_rational(p2_) + ")";
  }
  return "?";
}

// --------------------------------------------------------------------- JumpSpec

Extended<Rational> JumpSpec::lambda() const {
  if (const auto* p = parametric()) return Extended<Rational>(p->rate);
  return raw()->rate;
}

bool JumpSpec::no_jumps() const {
  Extended<Rational> l = lambda();
  return l.finite() && sgn(l.value()) == 0;
}

Extended<Rational> JumpSpec::eta(unsigned i) const {
  if (i == 0) throw InvalidModel("eta is indexed from 1");
  if (const auto* p = parametric()) return Extended<Rational>(Rational(p->rate * p->law.raw_moment(i)));
  const auto& r = *raw();
  if (no_jumps()) return Extended<Rational>(Rational(0));
  if (i <= r.eta.size()) return r.eta[i - 1];
  if (!r.eta.empty() && r.eta.back().infinite()) return Extended<Rational>::pos_inf();
  throw MissingMoment("jump moment eta_" + std::to_string(i) + " is not supplied (only " +
                      std::to_string(r.eta.size()) + " given)");
}

std::string JumpSpec::describe() const {
  if (const auto* p = parametric()) return "CPP(rate=" + format_rational(p->rate) + ", " + p->law.describe() + ")";
  const auto& r = *raw();
  std::string out = "RawMoments(rate=" + r.rate.format() + ", eta=[";
  for (std::size_t i = 0; i < r.eta.size(); ++i) out += (i ? ", " : "") + r.eta[i].format();
  return out + "])";
}

// ------------------------------------------------------------------- LevyModel

LevyModel::LevyModel(Rational drift, Rational sigma2, JumpSpec jumps)
    : drift_(std::move(drift)), sigma2_(std::move(sigma2)), jumps_(std::move(jumps)) {
  if (sgn(sigma2_) < 0) throw InvalidModel("sigma2 must be nonnegative");

  if (const auto* p = jumps_.parametric()) {
    if (sgn(p->rate) <= 0) throw InvalidModel("compound Poisson rate must be positive");
  } else {
    const auto& r = *jumps_.raw();
    if (r.rate.sign() < 0) throw InvalidModel("jump rate must be nonnegative");
    bool seen_inf = false;
    for (std::size_t i = 0; i < r.eta.size(); ++i) {
      const auto& e = r.eta[i];
      if (e.sign() < 0) throw InvalidModel("eta_" + std::to_string(i + 1) + " must be nonnegative");
      if (seen_inf && e.finite()) {
        throw InvalidModel("eta_" + std::to_string(i + 1) + " is finite after an infinite lower-order moment");
      }
      seen_inf = seen_inf || e.infinite();
    }
    if (!jumps_.no_jumps() && r.eta.empty()) throw MissingMoment("eta_1 is required when jumps are present");
  }

  Extended<Rational> eta1 = jumps_.eta(1);
  if (!eta1.finite()) throw InvalidModel("eta_1 must be finite (otherwise rho is not finite)");
  rho_ = drift_ + eta1.value();
  if (sgn(rho_) >= 0) {
    throw InvalidRho("the asymptotic drift rho = c + eta_1 = " + format_rational(rho_) + " must be negative");
  }
}

bool LevyModel::is_cpp() const {
  Extended<Rational> l = lambda();
  return sgn(sigma2_) == 0 && l.finite();
}

bool LevyModel::phi_evaluable() const { return jumps_.is_parametric() || jumps_.no_jumps(); }

Real LevyModel::phi(Real alpha) const {
  Real value = to_real(drift_) * alpha - to_real(sigma2_) * alpha * alpha / 2;
  if (const auto* p = jumps_.parametric()) {
    Real lst = p->law.lst(alpha);
    value += to_real(p->rate) * (1 - lst);
  } else if (!jumps_.no_jumps()) {
    throw Unsupported("phi(alpha) needs a parametric jump law; only raw moments were given");
  }
  return value;
}

std::string LevyModel::describe() const {
  return "Levy(c=" + format_rational(drift_) + ", sigma2=" + format_rational(sigma2_) + ", jumps=" + jumps_.describe() +
         ")";
}

// --------------------------------------------------------------------- PushSpec

PushSpec::PushSpec(Variant v) : spec_(std::move(v)) {
  if (const auto* d = std::get_if<DeterministicPush>(&spec_)) {
    if (sgn(d->x) < 0) throw InvalidModel("deterministic push must be nonnegative");
  }
  if (const auto* m = std::get_if<MomentPush>(&spec_)) {
    for (std::size_t i = 0; i < m->mu.size(); ++i) {
      if (sgn(m->mu[i]) < 0) throw InvalidModel("push moment mu_" + std::to_string(i + 1) + " must be nonnegative");
    }
  }
}

const ParametricLaw* PushSpec::law() const {
  if (const auto* p = std::get_if<ParametricPush>(&spec_)) return &p->law;
  return nullptr;
}

PushSpec PushSpec::resolve(const LevyModel& model) const {
  if (!is_same_as_jumps()) return *this;
  const auto* p = model.jumps().parametric();
  if (p == nullptr) throw InvalidModel("push 'same-as-jumps' needs a parametric compound Poisson jump law");
  return PushSpec::parametric(p->law);
}

std::string PushSpec::describe() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, DeterministicPush>) {
          return "Deterministic(" + format_rational(v.x) + ")";
        } else if constexpr (std::is_same_v<V, MomentPush>) {
          std::string out = "Moments([";
          for (std::size_t i = 0; i < v.mu.size(); ++i) out += (i ? ", " : "") + format_rational(v.mu[i]);
          return out + "])";
        } else if constexpr (std::is_same_v<V, ParametricPush>) {
          return v.law.describe();
        } else {
          return "SameAsJumps";
        }
      },
      spec_);
}

Rational push_moment(const PushSpec& push, unsigned n) {
  if (n == 0) return Rational(1);
  return std::visit(
      [n](const auto& v) -> Rational {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, DeterministicPush>) {
          Rational r(1);
          for (unsigned i = 0; i < n; ++i) r *= v.x;
          return r;
        } else if constexpr (std::is_same_v<V, MomentPush>) {
          if (n > v.mu.size()) {
            throw MissingMoment("push moment mu_" + std::to_string(n) + " is not supplied (only " +
                                std::to_string(v.mu.size()) + " given)");
          }
          return v.mu[n - 1];
        } else if constexpr (std::is_same_v<V, ParametricPush>) {
          return v.law.raw_moment(n);
        } else {
          throw InvalidModel("push 'same-as-jumps' must be resolved against a model first");
        }
      },
      push.variant());
}

}  // namespace levymom
