#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "levymom/scalar.hpp"

namespace levymom {

/// Dense univariate polynomial; coefficient i multiplies x^i. Stored without
/// trailing zeros, so the zero polynomial has no coefficients.
template <Field T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  /// x^k
  static Polynomial monomial(unsigned k, const T& c = FieldTraits<T>::from_int(1)) {
    std::vector<T> coeffs(k + 1, FieldTraits<T>::from_int(0));
    coeffs[k] = c;
    return Polynomial(std::move(coeffs));
  }

  bool is_zero() const { return coeffs_.empty(); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of x^i, zero beyond the degree.
  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : FieldTraits<T>::from_int(0); }

  const std::vector<T>& coeffs() const { return coeffs_; }

  T operator()(const T& x) const { return eval(x); }

  /// Horner evaluation.
  T eval(const T& x) const {
    T acc = FieldTraits<T>::from_int(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldTraits<T>::from_int(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldTraits<T>::from_int(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const T& s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, FieldTraits<T>::from_int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (FieldTraits<T>::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// x -> integral_0^x p(y) dy
  Polynomial integrate_from_zero() const {
    if (is_zero()) return {};
    std::vector<T> out(coeffs_.size() + 1, FieldTraits<T>::from_int(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      out[i + 1] = coeffs_[i] / FieldTraits<T>::from_int(static_cast<long>(i + 1));
    }
    return Polynomial(std::move(out));
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> out(coeffs_.size() - 1, FieldTraits<T>::from_int(0));
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * FieldTraits<T>::from_int(static_cast<long>(i));
    return Polynomial(std::move(out));
  }

  /// Human-readable form such as "2*x + x^2".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (FieldTraits<T>::is_zero(coeffs_[i])) continue;
      if (!out.empty()) out += " + ";
      std::string c = FieldTraits<T>::format(coeffs_[i]);
      if (i == 0) {
        out += c;
        continue;
      }
      if (c != "1") out += (c.find_first_of("/+ ") != std::string::npos || c[0] == '-' ? "(" + c + ")" : c) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return out;
  }

  template <Field U>
  Polynomial<U> cast() const {
    std::vector<U> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
      if constexpr (std::is_same_v<T, U>) {
        out.push_back(c);
      } else if constexpr (std::is_same_v<T, Rational>) {
        out.push_back(field_cast<U>(c));
      } else {
        out.push_back(static_cast<U>(c));
      }
    }
    return Polynomial<U>(std::move(out));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && FieldTraits<T>::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

template <Field T>
Polynomial<T> poly_add(const Polynomial<T>& p, const Polynomial<T>& q) { return p + q; }

template <Field T>
Polynomial<T> poly_mul(const Polynomial<T>& p, const Polynomial<T>& q) { return p * q; }

template <Field T>
Polynomial<T> poly_scale(const T& s, const Polynomial<T>& p) { return s * p; }

template <Field T>
Polynomial<T> poly_integrate_from_zero(const Polynomial<T>& p) { return p.integrate_from_zero(); }

template <Field T>
T poly_eval(const Polynomial<T>& p, const T& x) { return p.eval(x); }

}  // namespace levymom
