#include <cmath>

#include "doctest.h"
#include "levymom/mg1.hpp"
#include "levymom/transform.hpp"
#include "support.hpp"

using namespace levymom;
using namespace testsupport;

namespace {

double d(Real x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("phibar: polynomial exponents are integrated exactly") {
  CHECK(phi_bar(pure_drift(), 0.3L) == doctest::Approx(-0.15));
  // c a / 2 - sigma2 a^2 / 6
  CHECK(d(phi_bar(brownian(), 0.6L)) == doctest::Approx(-0.3 - 2 * 0.36 / 6).epsilon(1e-15));
  CHECK(phi_bar(ref_mg1(), 0.0L) == 0);
}

TEST_CASE("phibar: exponential jumps against the closed form") {
  // phi(a) = c a + lambda a/(1 + a), so phibar(a) = c a/2 + lambda (1 - log(1 + a)/a).
  for (long double a : {0.05L, 0.1L, 1.0L, 7.5L}) {
    long double exact = -a / 2 + 0.5L * (1 - std::log1p(a) / a);
    CHECK(std::fabs(phi_bar(ref_mg1(), a) - exact) <= 1e-13L * std::fabs(exact));
  }
}

TEST_CASE("Pi: trivial cases") {
  CHECK(pi_transform(PushSpec::same_as_jumps(), ref_mg1(), 0.0L, 2.0L) == 1);
  Real pb = phi_bar(ref_mg1(), 0.2L);
  CHECK(d(pi_transform(PushSpec::deterministic(Q(3)), ref_mg1(), 0.2L, 1.0L)) ==
        doctest::Approx(d(1.0L / (0.6L + 1.0L - pb))).epsilon(1e-15));
}

TEST_CASE("Pi: the two integral forms agree") {
  for (auto [a, b] : std::vector<std::pair<long double, long double>>{{0.1L, 1.0L}, {0.05L, 1.0L}, {0.5L, 0.25L}}) {
    Real direct = pi_transform(PushSpec::same_as_jumps(), ref_mg1(), a, b);
    Real laplace = pi_transform_laplace(PushSpec::same_as_jumps(), ref_mg1(), a, b);
    CHECK(std::fabs(direct - laplace) <= 1e-8L);
  }
  auto gm = gamma_mg1();
  CHECK(std::fabs(pi_transform(PushSpec::same_as_jumps(), gm, 0.3L, 0.7L) -
                  pi_transform_laplace(PushSpec::same_as_jumps(), gm, 0.3L, 0.7L)) <= 1e-8L);
  auto up = PushSpec::parametric(ParametricLaw::uniform(Q(1), Q(3)));
  CHECK(std::fabs(pi_transform(up, gm, 0.3L, 0.7L) - pi_transform_laplace(up, gm, 0.3L, 0.7L)) <= 1e-8L);
}

TEST_CASE("Xi truncation") {
  auto grid = area_tau_grid<Q>(ref_mg1(), PushSpec::same_as_jumps(), 4);
  CHECK(xi_truncated(grid, Q(0), Q(0)) == 1);
  Q a(1, 100), b(1, 50);
  CHECK(xi_truncated(grid, a, b, 1) == 1 - 4 * a - 2 * b);
  CHECK_THROWS_AS(xi_truncated(grid, a, b, 5), InvalidArgument);
}

TEST_CASE("Xi_M(0, beta) is the tau part of the fixed-point series") {
  const unsigned M = 6;
  auto grid = area_tau_grid<Q>(gamma_mg1(), PushSpec::same_as_jumps(), M);
  auto s = gamma_series_fixed_point<Q>(gamma_mg1(), PushSpec::same_as_jumps(), M);
  for (Q beta : {Q(1, 10), Q(1, 3)}) {
    Q series(0), bp(1);
    for (unsigned n = 0; n <= M; ++n, bp *= beta) series += s(0, n) * bp;
    CHECK(xi_truncated(grid, Q(0), beta) == series);
  }
}

TEST_CASE("Omega(0, beta) = 1 exactly") {
  for (Q beta : {Q(1, 4), Q(1), Q(4)}) {
    for (unsigned M : {1u, 4u, 8u}) CHECK(omega<Q>(ref_mg1(), PushSpec::same_as_jumps(), Q(0), beta, M).omega == 1);
    CHECK(omega<Q>(gamma_mg1(), PushSpec::same_as_jumps(), Q(0), beta, 6).omega == 1);
  }
  CHECK_THROWS_AS(omega<Q>(ref_mg1(), PushSpec::same_as_jumps(), Q(1, 20), Q(1), 8), Unsupported);
}

TEST_CASE("Omega at the reference point") {
  auto p = omega<Real>(ref_mg1(), PushSpec::same_as_jumps(), 0.05L, 1.0L, 8);
  CHECK(p.omega > 0);
  CHECK(p.omega <= 1);
  CHECK(d(p.phi_bar) == doctest::Approx(-0.01290164169432).epsilon(1e-12));
  CHECK(d(p.pi) == doctest::Approx(0.942740836908312).epsilon(1e-12));
  CHECK(d(p.omega) == doctest::Approx(0.961788072541492).epsilon(1e-12));
  CHECK(p.truncation() < 1e-7L);
}

TEST_CASE("Omega is nonincreasing in alpha") {
  Real prev = 1;
  for (long double a = 0.0L; a <= 0.0501L; a += 0.005L) {
    auto p = omega<Real>(ref_mg1(), PushSpec::same_as_jumps(), a, 1.0L, 8);
    CHECK(p.omega <= prev + p.truncation());
    prev = p.omega;
  }
}

TEST_CASE("raising M from 6 to 10 changes Omega by shrinking steps") {
  Real last_step = INFINITY, prev = 0;
  for (unsigned M = 6; M <= 10; ++M) {
    Real w = omega<Real>(ref_mg1(), PushSpec::same_as_jumps(), 0.01L, 1.0L, M).omega;
    if (M > 6) {
      Real step = std::fabs(w - prev);
      CHECK(step <= last_step);
      last_step = step;
    }
    prev = w;
  }
}

TEST_CASE("Omega preconditions") {
  CHECK_THROWS_AS(omega<Real>(brownian(), PushSpec::deterministic(Q(1)), 0.1L, 1.0L, 4), NonCPPModel);
  CHECK_THROWS_AS(omega<Real>(ref_mg1(), PushSpec::deterministic(Q(1)), 0.1L, 1.0L, 4), Unsupported);
  CHECK_THROWS_AS(omega<Real>(ref_mg1(), PushSpec::same_as_jumps(), 0.1L, 0.0L, 4), InvalidArgument);
  CHECK_THROWS_AS(detail::omega_formula<Q>(Q(1), Q(1), Q(1), Q(1), Q(1)), NonpositiveDenominator);
  CHECK_THROWS_AS(detail::omega_formula<Q>(Q(1), Q(1), Q(0), Q(1), Q(2)), ZeroDenominator);
}
