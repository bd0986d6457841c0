#pragma once

// The operators Gamma_a f(x) = E A_f(x) and Gamma_d f(x) = E D_f(x) on
// polynomials, and their nested compositions.
//
// For a monomial,
//   Gamma_a x^k = -(1/rho) * sum_{i=0}^{k} C(k,i) E[zeta^i] / (k-i+1) * x^{k-i+1},
// extended to polynomials by linearity. Gamma_d = lambda * Gamma_a.

#include <span>
#include <string>
#include <vector>

#include "levymom/polynomial.hpp"
#include "levymom/psi.hpp"

namespace levymom {

template <Field T>
class GammaContext {
 public:
  /// Context able to apply Gamma_a to polynomials of degree <= max_degree.
  static GammaContext create(const LevyModel& model, unsigned max_degree) {
    GammaContext ctx;
    ctx.rho_ = field_cast<T>(model.rho());
    ctx.lambda_ = model.lambda().template cast<T>();
    if (max_degree == 0) {
      ctx.psi_.psi = {Extended<T>(FieldTraits<T>::from_int(1))};
    } else {
      ctx.psi_ = psi_table<T>(model, max_degree);
    }
    return ctx;
  }

  const PsiTable<T>& psi() const { return psi_; }
  const T& rho() const { return rho_; }
  const Extended<T>& lambda() const { return lambda_; }
  unsigned max_degree() const { return psi_.order(); }

  /// E zeta^i, throwing FiniteMomentRequired when it diverges.
  T zeta_moment(unsigned i) const {
    if (i > psi_.order()) {
      throw MissingMoment("psi_" + std::to_string(i) + " was not computed (context order " +
                          std::to_string(psi_.order()) + ")");
    }
    Extended<T> m = psi_.zeta_moment(i);
    if (!m.finite()) {
      throw FiniteMomentRequired("E zeta^" + std::to_string(i) + " is infinite because eta_" + std::to_string(i + 1) +
                                 " is infinite; the requested moment does not exist");
    }
    return m.value();
  }

 private:
  PsiTable<T> psi_;
  T rho_;
  Extended<T> lambda_;
};

template <Field T>
Polynomial<T> gamma_a(const GammaContext<T>& ctx, const Polynomial<T>& f) {
  if (f.is_zero()) return {};
  if (FieldTraits<T>::sign(ctx.rho()) >= 0) throw InvalidRho("Gamma_a needs rho < 0");
  const auto deg = static_cast<unsigned>(f.degree());
  std::vector<T> zeta;
  zeta.reserve(deg + 1);
  for (unsigned i = 0; i <= deg; ++i) zeta.push_back(ctx.zeta_moment(i));

  std::vector<T> out(deg + 2, FieldTraits<T>::from_int(0));
  T minus_inv_rho = T(FieldTraits<T>::from_int(-1) / ctx.rho());
  for (unsigned k = 0; k <= deg; ++k) {
    const T& a = f.coeffs()[k];
    if (FieldTraits<T>::is_zero(a)) continue;
    T scaled = a * minus_inv_rho;
    for (unsigned i = 0; i <= k; ++i) {
      out[k - i + 1] += scaled * binomial<T>(k, i) * zeta[i] / FieldTraits<T>::from_int(static_cast<long>(k - i + 1));
    }
  }
  return Polynomial<T>(std::move(out));
}

/// Gamma_d f; `infinite` is set when lambda = inf and f != 0.
template <Field T>
struct GammaDResult {
  Polynomial<T> poly;
  bool infinite = false;
};

template <Field T>
GammaDResult<T> gamma_d(const GammaContext<T>& ctx, const Polynomial<T>& f) {
  const auto& lambda = ctx.lambda();
  // 0 * inf = 0 on both sides.
  if (f.is_zero()) return {};
  if (lambda.finite() && FieldTraits<T>::is_zero(lambda.value())) return {};
  if (!lambda.finite()) return {{}, true};
  return {lambda.value() * gamma_a(ctx, f), false};
}

/// Gamma_a(f_1 * Gamma_a(f_2 * ... Gamma_a(f_m))), folded from the innermost
/// factor outward. The empty chain is the constant 1.
template <Field T>
Polynomial<T> compose_chain(const GammaContext<T>& ctx, std::span<const Polynomial<T>> fs) {
  Polynomial<T> acc = Polynomial<T>::constant(FieldTraits<T>::from_int(1));
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) acc = gamma_a(ctx, *it * acc);
  return acc;
}

template <Field T>
Polynomial<T> compose_chain(const GammaContext<T>& ctx, const std::vector<Polynomial<T>>& fs) {
  return compose_chain(ctx, std::span<const Polynomial<T>>(fs));
}

/// Degree of a chain over polynomials of the given degrees: sum (deg f_j + 1).
inline unsigned chain_degree(std::span<const int> degrees) {
  unsigned d = 0;
  for (int deg : degrees) d += static_cast<unsigned>(std::max(deg, 0)) + 1;
  return d;
}

/// integral p(x) dG_V(x) = sum_n p_n mu_n.
template <Field T>
T push_expectation(const PushSpec& push, const Polynomial<T>& p) {
  if (const auto* det = push.deterministic_value()) return p.eval(field_cast<T>(det->x));
  T sum = FieldTraits<T>::from_int(0);
  for (std::size_t n = 0; n < p.coeffs().size(); ++n) {
    if (FieldTraits<T>::is_zero(p.coeffs()[n])) continue;
    sum += p.coeffs()[n] * push_moment_as<T>(push, static_cast<unsigned>(n));
  }
  return sum;
}

}  // namespace levymom
