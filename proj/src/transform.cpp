#include "levymom/transform.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <functional>
#include <limits>
#include <string>

namespace levymom {
namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr Real kPhiBarTol = 1e-12L;
constexpr Real kPiTol = 1e-12L;
constexpr unsigned kMaxDepth = 24;

template <class F>
Real gl64(const F& f, Real a, Real b) {
  return gauss<Real, 64>::integrate(f, a, b);
}

// Bisect until the 64-point rule on [a, b] agrees with the sum over the halves.
template <class F>
Real adaptive_gl(const F& f, Real a, Real b, Real whole, unsigned depth, Real& worst) {
  Real mid = (a + b) / 2;
  Real left = gl64(f, a, mid);
  Real right = gl64(f, mid, b);
  Real refined = left + right;
  Real err = std::fabs(refined - whole);
  if (err <= kPhiBarTol * std::fabs(refined) || err == 0) return refined;
  if (depth >= kMaxDepth) {
    worst = std::max(worst, err / std::max(std::fabs(refined), std::numeric_limits<Real>::min()));
    return refined;
  }
  return adaptive_gl(f, a, mid, left, depth + 1, worst) + adaptive_gl(f, mid, b, right, depth + 1, worst);
}

template <class F>
Real kronrod(const F& f, Real a, Real b, const char* what) {
  Real err = 0;
  Real l1 = 0;
  Real v = gauss_kronrod<Real, 61>::integrate(f, a, b, 15, kPiTol, &err, &l1);
  if (!std::isfinite(v) || err > 1e-10L * std::max<Real>(std::fabs(v), 1e-300L)) {
    throw NumericalError(std::string(what) + ": quadrature did not converge (estimated error " + format_real(err) +
                         ")");
  }
  return v;
}

const ParametricLaw& push_law(const PushSpec& push, const LevyModel& model, PushSpec& holder) {
  holder = push.resolve(model);
  const ParametricLaw* law = holder.law();
  if (law == nullptr) throw Unsupported("Pi needs a deterministic or parametric push law");
  return *law;
}

}  // namespace

Real phi_bar(const LevyModel& model, Real alpha) {
  if (alpha < 0) throw InvalidArgument("phibar needs alpha >= 0");
  if (alpha == 0) return 0;
  const Real c = to_real(model.drift());
  const Real s2 = to_real(model.sigma2());
  const Real poly_part = c * alpha / 2 - s2 * alpha * alpha / 6;
  if (model.jumps().no_jumps()) return poly_part;
  const auto* jumps = model.jumps().parametric();
  if (jumps == nullptr) throw Unsupported("phibar needs a parametric jump law");

  const Real lambda = to_real(jumps->rate);
  auto f = [&](Real t) { return lambda * (1 - jumps->law.lst(alpha * t)); };
  Real whole = gl64(f, 0.0L, 1.0L);
  Real worst = 0;
  Real v = adaptive_gl(f, 0.0L, 1.0L, whole, 0, worst);
  if (worst > kPhiBarTol) {
    throw NumericalError("phibar: quadrature reached relative error " + format_real(worst) + " only");
  }
  return poly_part + v;
}

Real pi_transform(const PushSpec& push, const LevyModel& model, Real alpha, Real beta) {
  if (alpha < 0 || beta <= 0) throw InvalidArgument("Pi needs alpha >= 0 and beta > 0");
  if (alpha == 0) return 1;
  const Real gap = beta - phi_bar(model, alpha);
  if (gap <= 0) throw NonpositiveDenominator("Pi: beta - phibar(alpha) must be positive");

  PushSpec resolved = push.resolve(model);
  if (const auto* d = resolved.deterministic_value()) return beta / (alpha * to_real(d->x) + gap);
  PushSpec holder;
  const ParametricLaw& law = push_law(push, model, holder);
  auto kernel = [&](Real x) { return beta / (alpha * x + gap); };
  switch (law.family()) {
    case Family::Deterministic: return kernel(to_real(law.first()));
    case Family::Uniform: {
      Real a = to_real(law.first());
      Real b = to_real(law.second());
      return kronrod([&](Real x) { return kernel(x) * law.density(x); }, a, b, "Pi");
    }
    default:
      return kronrod([&](Real x) { return kernel(x) * law.density(x); }, 0.0L,
                     std::numeric_limits<Real>::infinity(), "Pi");
  }
}

Real pi_transform_laplace(const PushSpec& push, const LevyModel& model, Real alpha, Real beta) {
  if (alpha < 0 || beta <= 0) throw InvalidArgument("Pi needs alpha >= 0 and beta > 0");
  if (alpha == 0) return 1;
  const Real gap = beta - phi_bar(model, alpha);
  if (gap <= 0) throw NonpositiveDenominator("Pi: beta - phibar(alpha) must be positive");
  PushSpec resolved = push.resolve(model);
  std::function<Real(Real)> lst;
  if (const auto* d = resolved.deterministic_value()) {
    Real x0 = to_real(d->x);
    lst = [x0](Real s) { return std::exp(-x0 * s); };
  } else {
    PushSpec holder;
    const ParametricLaw law = push_law(push, model, holder);
    lst = [law](Real s) { return law.lst(s); };
  }
  return kronrod([&](Real s) { return beta * lst(alpha * s) * std::exp(-gap * s); }, 0.0L,
                 std::numeric_limits<Real>::infinity(), "Pi (Laplace form)");
}

namespace detail {

void require_omega_model(const LevyModel& model, const PushSpec& push) {
  if (sgn(model.sigma2()) != 0 || !model.lambda().finite() || sgn(model.lambda().value()) <= 0) {
    throw NonCPPModel("Omega is available for compound Poisson input only (sigma2 = 0, 0 < lambda < inf)");
  }
  const auto* jumps = model.jumps().parametric();
  if (jumps == nullptr) throw Unsupported("Omega needs a parametric jump law");
  PushSpec resolved = push.resolve(model);
  const ParametricLaw* law = resolved.law();
  if (law == nullptr || !(*law == jumps->law)) {
    throw Unsupported("Omega needs the push V to have the jump law (every later busy period starts with a jump)");
  }
}

}  // namespace detail
}  // namespace levymom
