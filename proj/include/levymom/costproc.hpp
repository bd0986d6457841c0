#pragma once

// The cost process x -> A_k(x) = integral_0^{tau_x} W_x(t)^k dt started from a
// deterministic level x: moment polynomials, theta(u), the moment ODE in x and
// the autocovariance in x.

#include <functional>
#include <vector>

#include "levymom/moments.hpp"

namespace levymom {

namespace detail {

template <Field T>
Polynomial<T> x_power(unsigned k) {
  return Polynomial<T>::monomial(k);
}

template <Field T>
std::vector<FunctionalSpec<T>> areas(std::initializer_list<unsigned> powers) {
  std::vector<FunctionalSpec<T>> out;
  for (unsigned k : powers) out.push_back(FunctionalSpec<T>::area(x_power<T>(k)));
  return out;
}

}  // namespace detail

/// p_l(x) = E A_1^l(x) = l! * chain(P1, ..., P1).
template <Field T>
Polynomial<T> cost_moment_poly(const LevyModel& model, unsigned ell) {
  if (ell == 0) return Polynomial<T>::constant(FieldTraits<T>::from_int(1));
  auto ctx = GammaContext<T>::create(model, 2 * ell - 1);
  std::vector<Polynomial<T>> chain(ell, detail::x_power<T>(1));
  return factorial<T>(ell) * compose_chain(ctx, chain);
}

/// theta(u) = lim_{y -> 0} E A_1^u(y) / y = u! * [x^1] chain(P1 x u).
template <Field T>
T theta_from_limit(const LevyModel& model, unsigned u) {
  if (u == 0) throw InvalidArgument("theta is defined for u >= 1");
  return cost_moment_poly<T>(model, u).coeff(1);
}

/// theta(u) as the explicit sum over I(u): index vectors i in N^u with
/// sum i = 2u - 1 and i_j <= 2j - 1 + sum_{a<j} i_a,
///
///   theta(u) = u! (-rho)^{-u} sum_{i in I(u)} prod_j C(n_j, i_j) E zeta^{i_j} / (n_j + 1 - i_j),
///
/// where n_j = 2j - 1 - sum_{a<j} i_a. Terms whose binomial vanishes
/// (i_j > n_j) are dropped.
template <Field T>
T theta_explicit(const LevyModel& model, unsigned u) {
  if (u == 0) throw InvalidArgument("theta is defined for u >= 1");
  auto ctx = GammaContext<T>::create(model, 2 * u - 1);
  const long target = 2 * static_cast<long>(u) - 1;
  T total = FieldTraits<T>::from_int(0);

  std::function<void(unsigned, long, T)> walk = [&](unsigned j, long prefix, T product) {
    if (j > u) {
      if (prefix == target) total += product;
      return;
    }
    const long n = 2 * static_cast<long>(j) - 1 - prefix;
    const long bound = 2 * static_cast<long>(j) - 1 + prefix;
    for (long i = 0; i <= bound && prefix + i <= target; ++i) {
      if (n < 0 || i > n) break;
      T term = product * binomial<T>(static_cast<unsigned long>(n), static_cast<unsigned long>(i)) *
               ctx.zeta_moment(static_cast<unsigned>(i)) / FieldTraits<T>::from_int(n + 1 - i);
      walk(j + 1, prefix + i, term);
    }
  };
  walk(1, 0, FieldTraits<T>::from_int(1));

  T minus_rho = -ctx.rho();
  return T(factorial<T>(u) * total / power(minus_rho, u));
}

/// p_l from the moment ODE in x,
///   d/dx E A_1^l(x) = sum_{i<l} C(l,i) theta(l-i) E A_1^i(x) + l E[A_1^{l-1}(x) tau_x],
/// with p_l(0) = 0. With corrected = false the cross term is omitted; the
/// lower moments p_i stay exact, so the output isolates the missing term.
template <Field T>
Polynomial<T> ode_recursion(const LevyModel& model, unsigned ell, bool corrected = true) {
  std::vector<Polynomial<T>> p{Polynomial<T>::constant(FieldTraits<T>::from_int(1))};
  std::vector<T> theta(ell + 1, FieldTraits<T>::from_int(0));
  for (unsigned u = 1; u <= ell; ++u) theta[u] = theta_from_limit<T>(model, u);

  for (unsigned L = 1; L <= ell; ++L) {
    Polynomial<T> rhs;
    for (unsigned i = 0; i < L; ++i) {
      Polynomial<T> lower = corrected ? p[i] : cost_moment_poly<T>(model, i);
      rhs += (binomial<T>(L, i) * theta[L - i]) * lower;
    }
    if (corrected) {
      std::vector<FunctionalSpec<T>> specs(L - 1, FunctionalSpec<T>::area(detail::x_power<T>(1)));
      specs.push_back(FunctionalSpec<T>::area(detail::x_power<T>(0)));
      rhs += FieldTraits<T>::from_int(L) * joint_moment_poly<T>(model, specs).poly;
    }
    p.push_back(rhs.integrate_from_zero());
  }
  return p[ell];
}

/// E A_k^2(x) - (E A_k(x))^2.
template <Field T>
T cost_variance(const LevyModel& model, unsigned k, const T& x) {
  auto second = joint_moment_poly<T>(model, detail::areas<T>({k, k})).poly;
  auto first = joint_moment_poly<T>(model, detail::areas<T>({k})).poly;
  T m = first.eval(x);
  return T(second.eval(x) - m * m);
}

/// E[A_k(x1) A_k(x2)] for 0 <= x1 <= x2. Driven by the same input, the path
/// from x2 is the path from x1 shifted up by d = x2 - x1 until tau_{x1}, and
/// then restarts from d. Expanding (W + d)^k gives
///   sum_i C(k,i) d^{k-i} E[A_k(x1) A_i(x1)] + E A_k(d) E A_k(x1).
template <Field T>
T cost_cross_moment(const LevyModel& model, unsigned k, const T& x1, const T& x2) {
  if (FieldTraits<T>::sign(x1) < 0 || x1 > x2) throw ArgumentOrder("autocovariance needs 0 <= x1 <= x2");
  const T d = x2 - x1;
  T sum = FieldTraits<T>::from_int(0);
  for (unsigned i = 0; i <= k; ++i) {
    T joint = joint_moment_poly<T>(model, detail::areas<T>({k, i})).poly.eval(x1);
    sum += binomial<T>(k, i) * power(d, k - i) * joint;
  }
  auto mean = joint_moment_poly<T>(model, detail::areas<T>({k})).poly;
  sum += mean.eval(d) * mean.eval(x1);
  return sum;
}

/// Cov(A_k(x1), A_k(x2)) for 0 <= x1 <= x2.
template <Field T>
T autocovariance(const LevyModel& model, unsigned k, const T& x1, const T& x2) {
  auto mean = joint_moment_poly<T>(model, detail::areas<T>({k})).poly;
  return T(cost_cross_moment(model, k, x1, x2) - mean.eval(x1) * mean.eval(x2));
}

}  // namespace levymom
