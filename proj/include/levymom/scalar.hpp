#pragma once

// Scalar fields used by the analytic engine.
//
// Two fields are supported: exact rationals (GMP) and extended-precision reals
// (x87 long double, 64-bit mantissa). Every analytic routine is a template over
// the field; model parameters are always stored as exact rationals and cast
// into the working field on entry.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "levymom/errors.hpp"

namespace levymom {

using Rational = mpq_class;
using Real = long double;

enum class ScalarMode { Rational, Real };

std::string to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

/// Parses "3", "-1/2", "0.25", "1e-3", "2.5E+2" exactly. "inf" is rejected
/// here; see parse_extended().
Rational parse_rational(std::string_view text);

/// Nearest long double to q (error below one ulp).
Real to_real(const Rational& q);

/// Exact rational value of a finite long double.
Rational from_real(Real x);

/// "p/q" (or "p" when q = 1).
std::string format_rational(const Rational& q);

/// Shortest round-trip style output with 17 significant digits.
std::string format_real(Real x);

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Rational;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(long v) { return Rational(v); }
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
  static int sign(const Rational& q) { return sgn(q); }
  static Real to_real(const Rational& q) { return levymom::to_real(q); }
  static std::string format(const Rational& q) { return format_rational(q); }
};

template <>
struct FieldTraits<Real> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Real;
  static Real from_rational(const Rational& q) { return levymom::to_real(q); }
  static Real from_int(long v) { return static_cast<Real>(v); }
  static bool is_zero(Real x) { return x == 0; }
  static int sign(Real x) { return (x > 0) - (x < 0); }
  static Real to_real(Real x) { return x; }
  static std::string format(Real x) { return format_real(x); }
};

template <class T>
concept Field = requires { FieldTraits<T>::exact; };

template <Field T>
T field_cast(const Rational& q) {
  return FieldTraits<T>::from_rational(q);
}

/// Exact binomial coefficient C(n, k); zero when k > n.
mpz_class binomial_z(unsigned long n, unsigned long k);
mpz_class factorial_z(unsigned long n);

template <Field T>
T binomial(unsigned long n, unsigned long k) {
  return field_cast<T>(Rational(binomial_z(n, k)));
}

template <Field T>
T factorial(unsigned long n) {
  return field_cast<T>(Rational(factorial_z(n)));
}

template <Field T>
T power(const T& base, unsigned exponent) {
  T result = FieldTraits<T>::from_int(1);
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

/// A field value or a signed infinity. Infinity is a regular state: moments
/// that diverge are reported, never thrown.
template <Field T>
class Extended {
 public:
  enum class State { Finite, PosInf, NegInf };

  Extended() : value_(FieldTraits<T>::from_int(0)) {}
  Extended(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

  static Extended pos_inf() { return Extended(State::PosInf); }
  static Extended neg_inf() { return Extended(State::NegInf); }
  /// +inf when sign >= 0, -inf otherwise.
  static Extended signed_inf(int sign) { return sign >= 0 ? pos_inf() : neg_inf(); }

  bool finite() const { return state_ == State::Finite; }
  bool infinite() const { return !finite(); }
  State state() const { return state_; }

  const T& value() const {
    if (!finite()) throw Unsupported("value() called on an infinite scalar");
    return value_;
  }

  /// Sign of the value, +-1 for infinities.
  int sign() const {
    switch (state_) {
      case State::PosInf: return 1;
      case State::NegInf: return -1;
      default: return FieldTraits<T>::sign(value_);
    }
  }

  Extended operator-() const {
    switch (state_) {
      case State::PosInf: return neg_inf();
      case State::NegInf: return pos_inf();
      default: return Extended(T(-value_));
    }
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.state_ != b.state_) return false;
    return !a.finite() || a.value_ == b.value_;
  }

  std::string format() const {
    switch (state_) {
      case State::PosInf: return "inf";
      case State::NegInf: return "-inf";
      default: return FieldTraits<T>::format(value_);
    }
  }

  /// Cast into another field, preserving the infinity flag.
  template <Field U>
  Extended<U> cast() const {
    if (!finite()) return Extended<U>::signed_inf(sign());
    if constexpr (std::is_same_v<T, U>) {
      return *this;
    } else if constexpr (std::is_same_v<T, Rational>) {
      return Extended<U>(field_cast<U>(value_));
    } else {
      return Extended<U>(static_cast<U>(value_));
    }
  }

 private:
  explicit Extended(State state) : value_(FieldTraits<T>::from_int(0)), state_(state) {}

  T value_;
  State state_ = State::Finite;
};

/// Accepts everything parse_rational() does plus "inf" / "+inf" / "infinity".
Extended<Rational> parse_extended(std::string_view text);

}  // namespace levymom
