#pragma once

// M/G/1 closed forms (unit drift) and the joint LST of (N, tau) as a
// truncated bivariate power series.
//
// For a compound Poisson input with drift c < 0, a busy period started at
// level y is a sum of sub-busy periods, which gives the fixed point
//
//   gamma(a, b) = E exp( -(Y/|c|) * { b + lambda [1 - e^{-a} gamma(a, b)] } )
//
// for the period started by a jump Y, where a marks the jump count N and b the
// length tau. The period started by the push V uses the same exponent with V
// in place of Y. All series are truncated at a fixed total degree M and carry
// exact coefficients in rational mode.

#include <string>
#include <vector>

#include "levymom/model.hpp"

namespace levymom {

namespace detail {

template <Field T>
void require_load(const T& rho) {
  if (!(FieldTraits<T>::sign(rho) > 0 && FieldTraits<T>::sign(T(FieldTraits<T>::from_int(1) - rho)) > 0)) {
    throw InvalidRho("closed forms need 0 < rho < 1 (rho = " + FieldTraits<T>::format(rho) + ")");
  }
}

}  // namespace detail

/// E A_Id = mu2 / (2 (1 - rho)^2).
template <Field T>
T iglehart_EA(const T& lambda, const T& mu2, const T& rho) {
  (void)lambda;
  detail::require_load(rho);
  T q = FieldTraits<T>::from_int(1) - rho;
  return T(mu2 / (FieldTraits<T>::from_int(2) * q * q));
}

/// E A_Id^2 = mu4/(4(1-rho)^3) + 4 lambda mu2 mu3/(3(1-rho)^4) + 5 lambda^2 mu2^3/(4(1-rho)^5).
template <Field T>
T cohen_EA2(const T& lambda, const T& mu2, const T& mu3, const T& mu4, const T& rho) {
  detail::require_load(rho);
  T q = FieldTraits<T>::from_int(1) - rho;
  T q3 = q * q * q;
  T q4 = q3 * q;
  T q5 = q4 * q;
  T a = mu4 / (FieldTraits<T>::from_int(4) * q3);
  T b = FieldTraits<T>::from_int(4) * lambda * mu2 * mu3 / (FieldTraits<T>::from_int(3) * q4);
  T c = FieldTraits<T>::from_int(5) * lambda * lambda * mu2 * mu2 * mu2 / (FieldTraits<T>::from_int(4) * q5);
  return T(a + b + c);
}

/// E[A_Id tau] = mu3/(2(1-rho)^3) + lambda mu2^2/(1-rho)^4.
template <Field T>
T joint_EA_tau(const T& lambda, const T& mu2, const T& mu3, const T& rho) {
  detail::require_load(rho);
  T q = FieldTraits<T>::from_int(1) - rho;
  T q3 = q * q * q;
  return T(mu3 / (FieldTraits<T>::from_int(2) * q3) + lambda * mu2 * mu2 / (q3 * q));
}

/// Power series in (a, b) truncated at total degree M; c(m, n) multiplies a^m b^n.
template <Field T>
class BivariateSeries {
 public:
  BivariateSeries() : BivariateSeries(0) {}
  explicit BivariateSeries(unsigned max_total) : max_total_(max_total), c_(max_total + 1) {
    for (unsigned m = 0; m <= max_total; ++m) c_[m].assign(max_total + 1 - m, FieldTraits<T>::from_int(0));
  }

  static BivariateSeries constant(unsigned max_total, const T& v) {
    BivariateSeries s(max_total);
    s.c_[0][0] = v;
    return s;
  }

  unsigned max_total() const { return max_total_; }
  const T& operator()(unsigned m, unsigned n) const { return c_.at(m).at(n); }
  T& at(unsigned m, unsigned n) { return c_.at(m).at(n); }

  BivariateSeries& operator+=(const BivariateSeries& o) {
    for (unsigned m = 0; m <= max_total_; ++m)
      for (unsigned n = 0; m + n <= max_total_; ++n) c_[m][n] += o.c_[m][n];
    return *this;
  }

  BivariateSeries& operator*=(const T& s) {
    for (auto& row : c_)
      for (auto& v : row) v *= s;
    return *this;
  }

  friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
  friend BivariateSeries operator*(BivariateSeries a, const T& s) { return a *= s; }
  friend BivariateSeries operator*(const T& s, BivariateSeries a) { return a *= s; }

  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    const unsigned M = a.max_total_;
    BivariateSeries out(M);
    for (unsigned m1 = 0; m1 <= M; ++m1) {
      for (unsigned n1 = 0; m1 + n1 <= M; ++n1) {
        const T& x = a.c_[m1][n1];
        if (FieldTraits<T>::is_zero(x)) continue;
        for (unsigned m2 = 0; m1 + n1 + m2 <= M; ++m2) {
          for (unsigned n2 = 0; m1 + n1 + m2 + n2 <= M; ++n2) out.c_[m1 + m2][n1 + n2] += x * b.c_[m2][n2];
        }
      }
    }
    return out;
  }

  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) { return a.c_ == b.c_; }

 private:
  unsigned max_total_;
  std::vector<std::vector<T>> c_;
};

namespace detail {

/// sum_n (-1)^n mom[n] s^n / n!, i.e. E exp(-X s) for s without constant term.
template <Field T>
BivariateSeries<T> compose_lst(const std::vector<T>& mom, const BivariateSeries<T>& s) {
  const unsigned M = s.max_total();
  BivariateSeries<T> out = BivariateSeries<T>::constant(M, FieldTraits<T>::from_int(1));
  BivariateSeries<T> pw = out;
  for (unsigned n = 1; n <= M; ++n) {
    pw = pw * s;
    T coef = mom.at(n) / factorial<T>(n);
    if (n % 2 == 1) coef = -coef;
    out += coef * pw;
  }
  return out;
}

}  // namespace detail

/// Joint LST gamma(a, b) = E exp(-a N - b tau) of the busy period started by
/// the push, to total order M. Needs a compound Poisson model (sigma2 = 0,
/// finite positive lambda) and jump and push moments up to order M.
template <Field T>
BivariateSeries<T> gamma_series_fixed_point(const LevyModel& model, const PushSpec& push, unsigned M) {
  if (sgn(model.sigma2()) != 0 || !model.lambda().finite() || sgn(model.lambda().value()) <= 0) {
    throw NonCPPModel("the fixed-point series needs a compound Poisson model with 0 < lambda < inf and sigma2 = 0");
  }
  const Rational lambda_q = model.lambda().value();
  const Rational speed = -model.drift();  // |c|; c < 0 since rho < 0
  PushSpec resolved = push.resolve(model);

  // Moments of Y/|c| and V/|c|.
  std::vector<T> jump(M + 1), start(M + 1);
  Rational scale(1);
  for (unsigned n = 0; n <= M; ++n) {
    Rational jump_moment(1);
    if (n > 0) {
      Extended<Rational> eta = model.jumps().eta(n);
      if (eta.infinite()) throw FiniteMomentRequired("the series needs eta_" + std::to_string(n) + " finite");
      jump_moment = eta.value() / lambda_q;
    }
    jump[n] = field_cast<T>(Rational(jump_moment / scale));
    start[n] = field_cast<T>(Rational(push_moment(resolved, n) / scale));
    scale *= speed;
  }

  const T lambda = field_cast<T>(lambda_q);
  BivariateSeries<T> e_minus_a(M);  // e^{-a}
  for (unsigned m = 0; m <= M; ++m) {
    T v = FieldTraits<T>::from_int(1) / factorial<T>(m);
    e_minus_a.at(m, 0) = m % 2 ? T(-v) : v;
  }
  BivariateSeries<T> b(M);
  if (M >= 1) b.at(0, 1) = FieldTraits<T>::from_int(1);

  auto exponent = [&](const BivariateSeries<T>& g) {
    // b + lambda (1 - e^{-a} g); the constant term cancels since g(0,0) = 1.
    BivariateSeries<T> z = e_minus_a * g;
    z *= T(-lambda);
    z.at(0, 0) += lambda;
    z += b;
    z.at(0, 0) = FieldTraits<T>::from_int(0);
    return z;
  };

  // The order-d coefficients of the right-hand side are R_d + r g_d, where R_d
  // only involves lower orders and r = lambda E Y / |c| is the load. Plain
  // iteration therefore only converges geometrically; solving
  // g_d = R_d / (1 - r) order by order is exact.
  const T load = lambda * jump[1];
  const T gain = FieldTraits<T>::from_int(1) / (FieldTraits<T>::from_int(1) - load);
  BivariateSeries<T> g = BivariateSeries<T>::constant(M, FieldTraits<T>::from_int(1));
  for (unsigned d = 1; d <= M; ++d) {
    BivariateSeries<T> h = detail::compose_lst(jump, exponent(g));
    for (unsigned m = 0; m <= d; ++m) g.at(m, d - m) = h(m, d - m) * gain;
  }
  return detail::compose_lst(start, exponent(g));
}

/// E N^n tau^m = (-1)^{m+n} m! n! c(n, m).
template <Field T>
T series_moment(const BivariateSeries<T>& s, unsigned n_jumps, unsigned m_tau) {
  T v = factorial<T>(n_jumps) * factorial<T>(m_tau) * s(n_jumps, m_tau);
  return (n_jumps + m_tau) % 2 ? T(-v) : v;
}

}  // namespace levymom
