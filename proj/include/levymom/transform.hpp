#pragma once

// Transform of the area under the reflected workload until an independent
// exponential time T_beta,
//   Omega(a, b) = E exp(-a * integral_0^{T_b} Wbar_V(t) dt),
// expressed through Xi(a, b) = E exp(-a A - b tau) of one busy period:
//
//   Omega = [(lambda+b) Pi + b Xi (1 - (lambda+b)/(b - phibar(a)))] / (lambda + b - lambda Xi),
//
// with phibar(a) = integral_0^1 phi(a t) dt and
//   Pi(a, b) = integral beta / (a x + b - phibar(a)) dG(x).
// Xi is replaced by its Taylor polynomial of total order M in (a, b).

#include <cmath>
#include <vector>

#include "levymom/moments.hpp"

namespace levymom {

/// integral_0^1 phi(alpha t) dt. Exact for models without jumps; otherwise
/// 64-point Gauss-Legendre with bisection until two levels agree to 1e-12.
Real phi_bar(const LevyModel& model, Real alpha);

/// Pi(alpha, beta) by quadrature against the push law (point mass for
/// deterministic pushes).
Real pi_transform(const PushSpec& push, const LevyModel& model, Real alpha, Real beta);

/// The same quantity from integral_0^inf beta Gtilde(alpha s) e^{-(beta - phibar) s} ds.
Real pi_transform_laplace(const PushSpec& push, const LevyModel& model, Real alpha, Real beta);

/// Grid of E A^m tau^n (A = area under the identity) used by xi_truncated.
template <Field T>
MomentGrid<T> area_tau_grid(const LevyModel& model, const PushSpec& push, unsigned order) {
  return moment_grid(model, push, FunctionalSpec<T>::area(Polynomial<T>::monomial(1)),
                     FunctionalSpec<T>::area(Polynomial<T>::constant(FieldTraits<T>::from_int(1))), order);
}

/// Terms of Xi_M of total order exactly d: sum_{m+n=d} (-a)^m (-b)^n / (m! n!) E A^m tau^n.
template <Field T>
T xi_order_term(const MomentGrid<T>& grid, const T& alpha, const T& beta, unsigned d) {
  T sum = FieldTraits<T>::from_int(0);
  for (unsigned m = 0; m <= d; ++m) {
    unsigned n = d - m;
    const auto& cell = grid(m, n);
    if (!cell.finite()) throw FiniteMomentRequired("E A^m tau^n is infinite; Xi has no Taylor polynomial of this order");
    T term = power(alpha, m) * power(beta, n) * cell.value() / (factorial<T>(m) * factorial<T>(n));
    sum += d % 2 ? T(-term) : term;
  }
  return sum;
}

/// Xi_M(a, b) with M = grid.max_total() unless a smaller order is given.
template <Field T>
T xi_truncated(const MomentGrid<T>& grid, const T& alpha, const T& beta, int order = -1) {
  unsigned M = order < 0 ? grid.max_total() : static_cast<unsigned>(order);
  if (M > grid.max_total()) throw InvalidArgument("grid is not complete to the requested order");
  T sum = FieldTraits<T>::from_int(0);
  for (unsigned d = 0; d <= M; ++d) sum += xi_order_term(grid, alpha, beta, d);
  return sum;
}

template <Field T>
struct OmegaPoint {
  T alpha;
  T beta;
  unsigned order = 0;
  T phi_bar;
  T pi;
  T xi;          // Xi_M
  T omega;       // Omega with Xi_M
  T last_term;   // order-M part of Xi_M
  T omega_prev;  // Omega with Xi_{M-1}
  /// |Omega(Xi_M) - Omega(Xi_{M-1})|, the truncation diagnostic.
  T truncation() const {
    T d = omega - omega_prev;
    return FieldTraits<T>::sign(d) < 0 ? T(-d) : d;
  }
};

namespace detail {

template <Field T>
T omega_formula(const T& lambda, const T& beta, const T& phibar, const T& pi, const T& xi) {
  const T lb = lambda + beta;
  const T gap = beta - phibar;
  if (FieldTraits<T>::sign(gap) <= 0) throw NonpositiveDenominator("beta - phibar(alpha) must be positive");
  const T den = lb - lambda * xi;
  if (FieldTraits<T>::is_zero(den)) throw ZeroDenominator("Omega denominator lambda + beta - lambda Xi vanishes");
  const T num = lb * pi + beta * xi * (FieldTraits<T>::from_int(1) - lb / gap);
  return T(num / den);
}

void require_omega_model(const LevyModel& model, const PushSpec& push);

}  // namespace detail

/// Omega(alpha, beta) with Xi replaced by Xi_M. The model must be a compound
/// Poisson process with sigma2 = 0, and V must have the jump law. In rational
/// mode only alpha = 0 is available (phibar and Pi are transcendental
/// otherwise); there the identity Omega(0, beta) = 1 holds exactly.
template <Field T>
OmegaPoint<T> omega(const LevyModel& model, const PushSpec& push, const T& alpha, const T& beta, unsigned M,
                    const MomentGrid<T>* grid = nullptr) {
  detail::require_omega_model(model, push);
  if (FieldTraits<T>::sign(alpha) < 0 || FieldTraits<T>::sign(beta) <= 0) {
    throw InvalidArgument("Omega needs alpha >= 0 and beta > 0");
  }
  if (M == 0) throw InvalidArgument("truncation order must be at least 1");

  OmegaPoint<T> p;
  p.alpha = alpha;
  p.beta = beta;
  p.order = M;
  if (FieldTraits<T>::is_zero(alpha)) {
    p.phi_bar = FieldTraits<T>::from_int(0);
    p.pi = FieldTraits<T>::from_int(1);
  } else if constexpr (FieldTraits<T>::exact) {
    throw Unsupported("Omega at alpha > 0 needs real mode (phibar and Pi are not rational)");
  } else {
    p.phi_bar = phi_bar(model, alpha);
    p.pi = pi_transform(push, model, alpha, beta);
  }

  MomentGrid<T> local;
  if (grid == nullptr || grid->max_total() < M) {
    local = area_tau_grid<T>(model, push, M);
    grid = &local;
  }
  const T lambda = field_cast<T>(model.lambda().value());
  p.xi = xi_truncated(*grid, alpha, beta, static_cast<int>(M));
  p.last_term = xi_order_term(*grid, alpha, beta, M);
  p.omega = detail::omega_formula(lambda, beta, p.phi_bar, p.pi, p.xi);
  p.omega_prev = detail::omega_formula(lambda, beta, p.phi_bar, p.pi, T(p.xi - p.last_term));
  return p;
}

}  // namespace levymom
