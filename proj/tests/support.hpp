#pragma once

#include <random>

#include "levymom/gamma.hpp"
#include "levymom/moments.hpp"

namespace testsupport {

using levymom::Polynomial;
using levymom::Rational;
using Q = levymom::Rational;
using PolyQ = levymom::Polynomial<levymom::Rational>;
using SpecQ = levymom::FunctionalSpec<levymom::Rational>;

inline levymom::LevyModel ref_mg1() {
  return levymom::LevyModel(Q(-1), Q(0),
                            levymom::ParametricJumps{levymom::ParametricLaw::exponential(Q(1)), Q(1, 2)});
}

inline levymom::LevyModel gamma_mg1() {
  return levymom::LevyModel(Q(-1), Q(0),
                            levymom::ParametricJumps{levymom::ParametricLaw::gamma(Q(2), Q(2)), Q(1, 3)});
}

inline levymom::LevyModel brownian() { return levymom::LevyModel(Q(-1), Q(2), levymom::JumpSpec::none()); }

inline levymom::LevyModel pure_drift() { return levymom::LevyModel(Q(-1), Q(0), levymom::JumpSpec::none()); }

inline PolyQ P(unsigned k) { return PolyQ::monomial(k); }

inline PolyQ poly(std::initializer_list<Q> c) { return PolyQ(c); }

/// Random rationals p/q with |p| <= 10, 1 <= q <= 7.
struct RandomQ {
  std::mt19937_64 gen;
  explicit RandomQ(std::uint64_t seed) : gen(seed) {}
  Q scalar() {
    Q q(static_cast<long>(gen() % 21) - 10, static_cast<long>(gen() % 7) + 1);
    q.canonicalize();
    return q;
  }
  PolyQ polynomial(unsigned max_degree) {
    std::vector<Q> c(gen() % (max_degree + 1) + 1);
    for (auto& v : c) v = scalar();
    return PolyQ(std::move(c));
  }
  unsigned below(unsigned n) { return static_cast<unsigned>(gen() % n); }
};

}  // namespace testsupport
