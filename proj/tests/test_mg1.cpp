#include "doctest.h"
#include "levymom/mg1.hpp"
#include "support.hpp"

using namespace levymom;
using namespace testsupport;

namespace {

struct Mg1 {
  Q lambda, mu2, mu3, mu4, rho;
};

Mg1 params(const LevyModel& m) {
  const auto& p = *m.jumps().parametric();
  return {p.rate, p.law.raw_moment(2), p.law.raw_moment(3), p.law.raw_moment(4), p.rate * p.law.raw_moment(1)};
}

}  // namespace

TEST_CASE("closed forms for the reference model") {
  auto p = params(ref_mg1());
  CHECK(iglehart_EA<Q>(p.lambda, p.mu2, p.rho) == 4);
  CHECK(cohen_EA2<Q>(p.lambda, p.mu2, p.mu3, p.mu4, p.rho) == 256);
  CHECK(joint_EA_tau<Q>(p.lambda, p.mu2, p.mu3, p.rho) == 56);
}

TEST_CASE("closed forms reject loads outside (0, 1)") {
  CHECK_THROWS_AS(iglehart_EA<Q>(Q(1), Q(2), Q(1)), InvalidRho);
  CHECK_THROWS_AS(iglehart_EA<Q>(Q(1), Q(2), Q(0)), InvalidRho);
  CHECK_THROWS_AS(cohen_EA2<Q>(Q(1), Q(2), Q(6), Q(24), Q(3, 2)), InvalidRho);
  CHECK_THROWS_AS(joint_EA_tau<Q>(Q(1), Q(2), Q(6), Q(-1, 2)), InvalidRho);
}

TEST_CASE("closed forms equal the engine on several compound Poisson models") {
  std::vector<LevyModel> models = {
      ref_mg1(), gamma_mg1(),
      LevyModel(Q(-1), Q(0), ParametricJumps{ParametricLaw::uniform(Q(1, 2), Q(2)), Q(2, 5)}),
      LevyModel(Q(-1), Q(0), ParametricJumps{ParametricLaw::deterministic(Q(3, 2)), Q(1, 4)}),
      LevyModel(Q(-1), Q(0), ParametricJumps{ParametricLaw::exponential(Q(5, 3)), Q(7, 5)})};
  for (const auto& m : models) {
    auto p = params(m);
    auto e = [&](std::vector<SpecQ> s) { return joint_moment(m, PushSpec::same_as_jumps(), s).value.value(); };
    CHECK(e({SpecQ::area(P(1))}) == iglehart_EA<Q>(p.lambda, p.mu2, p.rho));
    CHECK(e({SpecQ::area(P(1)), SpecQ::area(P(1))}) == cohen_EA2<Q>(p.lambda, p.mu2, p.mu3, p.mu4, p.rho));
    CHECK(e({SpecQ::area(P(1)), SpecQ::area(P(0))}) == joint_EA_tau<Q>(p.lambda, p.mu2, p.mu3, p.rho));
  }
}

TEST_CASE("fixed-point series") {
  auto s = gamma_series_fixed_point<Q>(ref_mg1(), PushSpec::same_as_jumps(), 5);
  CHECK(s(0, 0) == 1);
  CHECK(series_moment(s, 0, 1) == 2);
  CHECK(series_moment(s, 1, 0) == 1);
  CHECK(series_moment(s, 0, 2) == 16);
  CHECK(series_moment(s, 2, 0) == 7);
  // Joint moment of the jump count and the length; the literal permutation
  // reading of the engine gives 8 here instead.
  CHECK(series_moment(s, 1, 1) == 10);
}

TEST_CASE("series coefficients are stable once determined") {
  auto s5 = gamma_series_fixed_point<Q>(gamma_mg1(), PushSpec::same_as_jumps(), 5);
  auto s7 = gamma_series_fixed_point<Q>(gamma_mg1(), PushSpec::same_as_jumps(), 7);
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned n = 0; m + n <= 5; ++n) CHECK(s5(m, n) == s7(m, n));
}

TEST_CASE("series oracle equals the engine for m + n <= 5") {
  for (const auto& m : {ref_mg1(), gamma_mg1()}) {
    for (const auto& push : {PushSpec::same_as_jumps(), PushSpec::deterministic(Q(2)),
                             PushSpec::parametric(ParametricLaw::uniform(Q(0), Q(1)))}) {
      auto s = gamma_series_fixed_point<Q>(m, push, 5);
      auto g = moment_grid(m, push, SpecQ::area(P(0)), SpecQ::jump_sum(P(0)), 5);
      for (unsigned t = 0; t <= 5; ++t)
        for (unsigned n = 0; t + n <= 5; ++n) CHECK(g(t, n).value() == series_moment(s, n, t));
    }
  }
}

TEST_CASE("E N = lambda E tau from the series") {
  auto m = gamma_mg1();
  auto s = gamma_series_fixed_point<Q>(m, PushSpec::same_as_jumps(), 3);
  CHECK(series_moment(s, 1, 0) == Q(1, 3) * series_moment(s, 0, 1));
}

TEST_CASE("series needs a compound Poisson model") {
  CHECK_THROWS_AS(gamma_series_fixed_point<Q>(brownian(), PushSpec::deterministic(Q(1)), 3), NonCPPModel);
}

TEST_CASE("bivariate series algebra") {
  BivariateSeries<Q> a(3), b(3);
  a.at(0, 0) = 1;
  a.at(1, 0) = 2;
  b.at(0, 0) = 3;
  b.at(0, 1) = 1;
  auto c = a * b;
  CHECK(c(0, 0) == 3);
  CHECK(c(1, 0) == 6);
  CHECK(c(0, 1) == 1);
  CHECK(c(1, 1) == 2);
  CHECK((a + b)(0, 0) == 4);
}
