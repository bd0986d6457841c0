#include "doctest.h"
#include "levymom/costproc.hpp"
#include "support.hpp"

using namespace levymom;
using namespace testsupport;

TEST_CASE("theta examples") {
  CHECK(theta_explicit<Q>(pure_drift(), 1) == 0);
  CHECK(theta_from_limit<Q>(pure_drift(), 1) == 0);
  CHECK(theta_explicit<Q>(ref_mg1(), 1) == 2);
  CHECK(theta_from_limit<Q>(ref_mg1(), 1) == 2);
  CHECK(theta_explicit<Q>(ref_mg1(), 2) == 128);
  CHECK(theta_from_limit<Q>(ref_mg1(), 2) == 128);
  CHECK_THROWS_AS(theta_explicit<Q>(ref_mg1(), 0), InvalidArgument);
}

TEST_CASE("theta: explicit sum equals the limit definition") {
  for (const auto& m : {ref_mg1(), gamma_mg1(), brownian()})
    for (unsigned u = 1; u <= 5; ++u) CHECK(theta_explicit<Q>(m, u) == theta_from_limit<Q>(m, u));
}

TEST_CASE("cost moment polynomials") {
  auto m = ref_mg1();
  CHECK(cost_moment_poly<Q>(m, 0) == P(0));
  CHECK(cost_moment_poly<Q>(m, 1) == poly({0, 2, 1}));
  CHECK(cost_moment_poly<Q>(m, 2) == poly({0, 128, 32, Q(20, 3), 1}));
  for (const auto& mm : {ref_mg1(), gamma_mg1(), brownian()}) {
    for (unsigned l = 1; l <= 5; ++l) {
      auto p = cost_moment_poly<Q>(mm, l);
      CHECK(p.coeff(0) == 0);
      for (const auto& c : p.coeffs()) CHECK(sgn(c) >= 0);
    }
  }
}

TEST_CASE("cost moments agree with the joint-moment engine at a deterministic start") {
  auto m = gamma_mg1();
  for (unsigned l = 1; l <= 3; ++l) {
    auto p = cost_moment_poly<Q>(m, l);
    std::vector<SpecQ> specs(l, SpecQ::area(P(1)));
    for (Q x : {Q(1, 2), Q(2)}) CHECK(joint_moment(m, PushSpec::deterministic(x), specs).value.value() == p.eval(x));
  }
}

TEST_CASE("moment ODE, corrected and verbatim") {
  auto m = ref_mg1();
  CHECK(ode_recursion<Q>(m, 0) == P(0));
  CHECK(ode_recursion<Q>(m, 1, true) == poly({0, 2, 1}));
  CHECK(ode_recursion<Q>(m, 1, false) == poly({0, 2}));
  CHECK(ode_recursion<Q>(m, 2, true) == poly({0, 128, 32, Q(20, 3), 1}));
  CHECK(ode_recursion<Q>(m, 2, false) == poly({0, 128, 4, Q(4, 3)}));
  for (const auto& mm : {ref_mg1(), gamma_mg1(), brownian()})
    for (unsigned l = 0; l <= 4; ++l) CHECK(ode_recursion<Q>(mm, l, true) == cost_moment_poly<Q>(mm, l));
}

TEST_CASE("the cross term is 2 E[A_1(x) tau_x] at l = 2") {
  auto m = ref_mg1();
  auto cross = joint_moment_poly<Q>(m, std::vector<SpecQ>{SpecQ::area(P(1)), SpecQ::area(P(0))}).poly;
  CHECK(cross == poly({0, 28, 8, 2}));
}

TEST_CASE("variance and autocovariance") {
  auto m = ref_mg1();
  auto var = [&](Q x) { return cost_variance<Q>(m, 1, x); };
  for (Q x : {Q(1, 3), Q(1), Q(5, 2)}) {
    CHECK(var(x) == 128 * x + 28 * x * x + Q(8, 3) * x * x * x);
    CHECK(autocovariance<Q>(m, 1, x, x) == var(x));
  }
  CHECK(autocovariance<Q>(m, 1, Q(0), Q(3)) == 0);
  CHECK(autocovariance<Q>(m, 1, Q(1), Q(2)) == Q(572, 3));
  CHECK_THROWS_AS(autocovariance<Q>(m, 1, Q(2), Q(1)), ArgumentOrder);
  CHECK_THROWS_AS(autocovariance<Q>(m, 1, Q(-1), Q(1)), ArgumentOrder);
}

TEST_CASE("autocovariance obeys Cauchy-Schwarz on a grid") {
  for (const auto& m : {ref_mg1(), gamma_mg1()}) {
    for (unsigned k = 0; k <= 2; ++k) {
      for (Q x1 : {Q(1, 4), Q(1), Q(2)}) {
        for (Q d : {Q(0), Q(1, 2), Q(3)}) {
          Q x2 = x1 + d;
          Q c = autocovariance<Q>(m, k, x1, x2);
          CHECK(c * c <= cost_variance<Q>(m, k, x1) * cost_variance<Q>(m, k, x2));
          CHECK(sgn(c) >= 0);
        }
      }
    }
  }
}

TEST_CASE("Brownian cost process closed form") {
  // E A_1(x) = x / |c| * (E zeta + x / 2) with E zeta = sigma2 / (2|c|) = 1.
  CHECK(cost_moment_poly<Q>(brownian(), 1) == poly({0, 1, Q(1, 2)}));
}
