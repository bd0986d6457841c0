#include "doctest.h"
#include "support.hpp"

using namespace testsupport;

TEST_CASE("polynomial arithmetic examples") {
  CHECK(P(1) + P(2) == poly({0, 1, 1}));
  CHECK(poly({0, 2}) * poly({0, 2, 1}) == poly({0, 0, 4, 2}));
  CHECK((Q(0) * poly({1, 2, 3})).is_zero());
  CHECK((Q(0) * poly({1, 2, 3})).coeffs().empty());
  CHECK(PolyQ::constant(Q(0)).is_zero());
}

TEST_CASE("normalization drops trailing zeros") {
  PolyQ p{Q(1), Q(2), Q(0), Q(0)};
  CHECK(p.degree() == 1);
  CHECK(p.coeffs().size() == 2);
  CHECK((P(3) - P(3)).is_zero());
}

TEST_CASE("integration from zero") {
  CHECK(PolyQ::constant(Q(1)).integrate_from_zero() == P(1));
  CHECK(poly({0, 2, 1}).integrate_from_zero() == poly({0, 0, 1, Q(1, 3)}));
  CHECK(PolyQ().integrate_from_zero().is_zero());
  CHECK(poly({5, 1}).integrate_from_zero().coeff(0) == 0);
}

TEST_CASE("Horner evaluation") {
  CHECK(poly({0, 2, 1}).eval(Q(1)) == 3);
  CHECK(poly({0, 2, 1}).eval(Q(0)) == 0);
  CHECK(P(4).eval(Q(2)) == 16);
  CHECK(poly({1, 1}).eval(Q(-1, 2)) == Q(1, 2));
}

TEST_CASE("ring laws hold exactly up to degree 12") {
  RandomQ rnd(7);
  for (int trial = 0; trial < 200; ++trial) {
    PolyQ a = rnd.polynomial(12), b = rnd.polynomial(12), c = rnd.polynomial(12);
    Q s = rnd.scalar();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK(s * (a + b) == s * a + s * b);
    CHECK(a - a == PolyQ());
    CHECK(a * PolyQ::constant(Q(1)) == a);
  }
}

TEST_CASE("derivative inverts integration") {
  RandomQ rnd(11);
  for (int trial = 0; trial < 100; ++trial) {
    PolyQ a = rnd.polynomial(12);
    CHECK(a.integrate_from_zero().derivative() == a);
    if (!a.is_zero()) CHECK(a.integrate_from_zero().degree() == a.degree() + 1);
  }
}

TEST_CASE("real-mode polynomials") {
  using PolyR = levymom::Polynomial<levymom::Real>;
  PolyR p{1.0L, 2.0L, 3.0L};
  CHECK(p.eval(2.0L) == doctest::Approx(17.0));
  CHECK((p * p).degree() == 4);
}
