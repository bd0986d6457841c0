#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

using namespace levymom;
using namespace testsupport;

namespace {

Q moment(const LevyModel& m, const std::vector<SpecQ>& specs, const PushSpec& push = PushSpec::same_as_jumps(),
         bool literal = false) {
  EngineOptions o;
  o.literal = literal;
  return joint_moment(m, push, specs, o).value.value();
}

unsigned degree_needed(const std::vector<SpecQ>& specs) {
  unsigned d = 0;
  for (const auto& s : specs) d += static_cast<unsigned>(std::max(s.poly.degree(), 0)) + 1;
  return std::max(d, 1u);
}

// h -> integral h(x + y) nu(dy), expanded through eta_k.
PolyQ jump_shift(const LevyModel& m, const PolyQ& h) {
  PolyQ out = m.lambda().value() * h;
  PolyQ d = h;
  Q fact(1);
  for (unsigned k = 1; !d.is_zero() && k <= static_cast<unsigned>(std::max(h.degree(), 0)); ++k) {
    d = d.derivative();
    fact *= k;
    out += (m.jumps().eta(k).value() / fact) * d;
  }
  return out;
}

// Sum over ordered set partitions of the labelled factors. A block is one
// area factor or a nonempty set of jump-sum factors sharing a jump epoch.
Q ordered_partition_oracle(const LevyModel& m, const PushSpec& push, const std::vector<SpecQ>& specs) {
  auto ctx = GammaContext<Q>::create(m, degree_needed(specs) + 1);
  const unsigned n = static_cast<unsigned>(specs.size());
  std::function<PolyQ(unsigned)> value = [&](unsigned remaining) -> PolyQ {
    if (remaining == 0) return P(0);
    PolyQ total;
    for (unsigned block = remaining; block != 0; block = (block - 1) & remaining) {
      bool has_area = false;
      unsigned size = 0;
      PolyQ prod = P(0);
      for (unsigned i = 0; i < n; ++i) {
        if (!(block >> i & 1)) continue;
        ++size;
        has_area = has_area || specs[i].kind == FunctionalKind::Area;
        prod = prod * specs[i].poly;
      }
      if (has_area && size > 1) continue;
      PolyQ rest = value(remaining & ~block);
      total += gamma_a(ctx, prod * (has_area ? rest : jump_shift(m, rest)));
    }
    return total;
  };
  return push_expectation(push.resolve(m), value((1u << n) - 1));
}

// lambda^l times the chain sum over all (k + l)! orderings.
Q literal_permutation_oracle(const LevyModel& m, const PushSpec& push, const std::vector<SpecQ>& specs) {
  auto ctx = GammaContext<Q>::create(m, degree_needed(specs));
  std::vector<std::size_t> idx(specs.size());
  std::iota(idx.begin(), idx.end(), 0);
  unsigned jumps = 0;
  for (const auto& s : specs) jumps += s.kind == FunctionalKind::JumpSum;
  Q total(0);
  do {
    std::vector<PolyQ> chain;
    for (auto i : idx) chain.push_back(specs[i].poly);
    total += push_expectation(push.resolve(m), compose_chain(ctx, chain));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return power(m.lambda().value(), jumps) * total;
}

std::vector<SpecQ> random_specs(RandomQ& rnd, std::size_t len, unsigned max_degree) {
  std::vector<SpecQ> out;
  for (std::size_t i = 0; i < len; ++i) {
    PolyQ p = rnd.polynomial(max_degree);
    if (p.is_zero()) p = P(0);
    out.push_back(rnd.below(2) ? SpecQ::jump_sum(p) : SpecQ::area(p));
  }
  return out;
}

}  // namespace

TEST_CASE("joint moment examples for the reference model") {
  auto m = ref_mg1();
  CHECK(moment(m, {}) == 1);
  CHECK(moment(m, {SpecQ::area(P(0))}) == 2);
  CHECK(moment(m, {SpecQ::area(P(1))}) == 4);
  CHECK(moment(m, {SpecQ::area(P(1)), SpecQ::area(P(1))}) == 256);
  CHECK(moment(m, {SpecQ::area(P(1)), SpecQ::area(P(0))}) == 56);
  CHECK(moment(m, {SpecQ::area(P(0)), SpecQ::area(P(0))}) == 16);
  CHECK(moment(m, {SpecQ::jump_sum(P(0))}) == 1);
}

TEST_CASE("E tau = -mu_1 / rho for any push") {
  for (const auto& push : {PushSpec::deterministic(Q(3)), PushSpec::moments({Q(5, 2)}),
                           PushSpec::parametric(ParametricLaw::uniform(Q(1), Q(2)))}) {
    CHECK(moment(gamma_mg1(), {SpecQ::area(P(0))}, push) == -push_moment(push, 1) / gamma_mg1().rho());
  }
}

TEST_CASE("moment grid") {
  auto m = ref_mg1();
  auto g0 = moment_grid(m, PushSpec::same_as_jumps(), P(1), PolyQ(), 0);
  CHECK(g0(0, 0).value() == 1);
  auto g = moment_grid(m, PushSpec::same_as_jumps(), P(1), PolyQ(), 2);
  CHECK(g(2, 0).value() == 256);
  CHECK(g(0, 1).value() == 0);
  auto nt = moment_grid(m, PushSpec::same_as_jumps(), P(0), P(0), 3);
  CHECK(nt(1, 1).value() == 10);
  CHECK(nt(0, 2).value() == 7);
  CHECK(nt(0, 1).value() == 1);
  EngineOptions lit;
  lit.literal = true;
  auto nt_lit = moment_grid(m, PushSpec::same_as_jumps(), P(0), P(0), 3, lit);
  CHECK(nt_lit(1, 1).value() == 8);
  CHECK(nt_lit(0, 2).value() == 4);
  CHECK(nt_lit(2, 0).value() == 16);
}

TEST_CASE("exact jump-sum semantics equal the ordered set partition sum") {
  RandomQ rnd(21);
  for (const auto& m : {ref_mg1(), gamma_mg1()}) {
    for (int t = 0; t < 25; ++t) {
      auto specs = random_specs(rnd, 1 + rnd.below(4), 2);
      CHECK(moment(m, specs) == ordered_partition_oracle(m, PushSpec::same_as_jumps(), specs));
    }
  }
  auto det = PushSpec::deterministic(Q(3, 2));
  auto specs = std::vector<SpecQ>{SpecQ::jump_sum(P(1)), SpecQ::jump_sum(P(0)), SpecQ::area(P(0)), SpecQ::jump_sum(P(1))};
  CHECK(moment(gamma_mg1(), specs, det) == ordered_partition_oracle(gamma_mg1(), det, specs));
}

TEST_CASE("literal mode equals the brute-force permutation sum") {
  RandomQ rnd(23);
  for (const auto& m : {ref_mg1(), gamma_mg1()}) {
    for (int t = 0; t < 25; ++t) {
      auto specs = random_specs(rnd, 1 + rnd.below(4), 2);
      CHECK(moment(m, specs, PushSpec::same_as_jumps(), true) ==
            literal_permutation_oracle(m, PushSpec::same_as_jumps(), specs));
    }
  }
}

TEST_CASE("both modes agree without jump-sum factors, and for one jump-sum factor") {
  RandomQ rnd(29);
  for (int t = 0; t < 20; ++t) {
    std::vector<SpecQ> specs;
    for (unsigned i = 0, n = 1 + rnd.below(4); i < n; ++i) specs.push_back(SpecQ::area(rnd.polynomial(2)));
    CHECK(moment(gamma_mg1(), specs) == moment(gamma_mg1(), specs, PushSpec::same_as_jumps(), true));
  }
  CHECK(moment(ref_mg1(), {SpecQ::jump_sum(P(1))}) == moment(ref_mg1(), {SpecQ::jump_sum(P(1))}, PushSpec::same_as_jumps(), true));
}

TEST_CASE("permutation count metadata") {
  auto r = joint_moment(ref_mg1(), PushSpec::same_as_jumps(),
                        std::vector<SpecQ>{SpecQ::area(P(1)), SpecQ::area(P(1)), SpecQ::jump_sum(P(0))});
  CHECK(r.permutations == 6);
  CHECK(r.psi_order >= 4);
}

TEST_CASE("scaling a factor scales the moment") {
  RandomQ rnd(31);
  for (int t = 0; t < 15; ++t) {
    auto specs = random_specs(rnd, 1 + rnd.below(3), 2);
    Q s = rnd.scalar();
    auto scaled = specs;
    scaled[0].poly = s * scaled[0].poly;
    CHECK(moment(gamma_mg1(), scaled) == s * moment(gamma_mg1(), specs));
  }
}

TEST_CASE("adding a nonnegative coefficient does not decrease the moment") {
  auto m = ref_mg1();
  std::vector<SpecQ> base = {SpecQ::area(poly({1, 1})), SpecQ::jump_sum(P(1))};
  Q v = moment(m, base);
  for (unsigned k = 0; k <= 2; ++k) {
    auto more = base;
    more[0].poly = more[0].poly + P(k);
    CHECK(moment(m, more) >= v);
    more = base;
    more[1].poly = more[1].poly + Q(1, 3) * P(k);
    CHECK(moment(m, more) >= v);
  }
}

TEST_CASE("jump sums under lambda = 0 and lambda = inf") {
  auto b = joint_moment(brownian(), PushSpec::deterministic(Q(1)), std::vector<SpecQ>{SpecQ::jump_sum(P(1))});
  CHECK(b.value == Extended<Q>(Q(0)));
  LevyModel inf(Q(-1), Q(0), RawMomentJumps{{Extended<Q>(Q(1, 2)), Extended<Q>(Q(1))}, Extended<Q>::pos_inf()});
  auto r = joint_moment(inf, PushSpec::deterministic(Q(1)), std::vector<SpecQ>{SpecQ::jump_sum(P(0))});
  CHECK_FALSE(r.value.finite());
  auto z = joint_moment(inf, PushSpec::deterministic(Q(1)), std::vector<SpecQ>{SpecQ::jump_sum(PolyQ())});
  CHECK(z.value == Extended<Q>(Q(0)));
  auto a = joint_moment(inf, PushSpec::deterministic(Q(1)), std::vector<SpecQ>{SpecQ::area(P(0))});
  CHECK(a.value == Extended<Q>(Q(2)));
}

TEST_CASE("errors") {
  std::vector<SpecQ> many(13, SpecQ::area(P(0)));
  CHECK_THROWS_AS(joint_moment(ref_mg1(), PushSpec::same_as_jumps(), many), Unsupported);
  EngineOptions wide;
  wide.max_factors = 13;
  CHECK(joint_moment(ref_mg1(), PushSpec::deterministic(Q(1)), many, wide).value.finite());
  CHECK_THROWS_AS(joint_moment(ref_mg1(), PushSpec::moments({Q(1)}), std::vector<SpecQ>{SpecQ::area(P(1))}), MissingMoment);
  LevyModel heavy(Q(-1), Q(0), RawMomentJumps{{Extended<Q>(Q(1, 2)), Extended<Q>(Q(1)), Extended<Q>::pos_inf()},
                                              Extended<Q>(Q(1, 2))});
  CHECK_THROWS_AS(joint_moment(heavy, PushSpec::deterministic(Q(1)), std::vector<SpecQ>{SpecQ::area(P(2))}),
                  FiniteMomentRequired);
}

TEST_CASE("real mode tracks rational mode") {
  std::vector<SpecQ> specs = {SpecQ::area(P(1)), SpecQ::jump_sum(poly({1, 2})), SpecQ::area(P(0))};
  std::vector<FunctionalSpec<Real>> rs;
  for (const auto& s : specs) rs.push_back(s.cast<Real>());
  Real r = joint_moment(gamma_mg1(), PushSpec::same_as_jumps(), rs).value.value();
  CHECK(static_cast<double>(r) == doctest::Approx(static_cast<double>(to_real(moment(gamma_mg1(), specs)))).epsilon(1e-14));
}
