#include "levymom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "levymom/costproc.hpp"
#include "levymom/mcsim.hpp"
#include "levymom/mg1.hpp"
#include "levymom/transform.hpp"

namespace levymom {
namespace {

using Q = Rational;
using PolyQ = Polynomial<Q>;
using SpecQ = FunctionalSpec<Q>;

const PolyQ kP0 = PolyQ::constant(Q(1));
const PolyQ kP1 = PolyQ::monomial(1);

Q engine(const LevyModel& model, const PushSpec& push, const std::vector<SpecQ>& specs,
         const EngineOptions& options = {}) {
  return joint_moment(model, push, specs, options).value.value();
}

std::string fmt(const Q& q) { return format_rational(q); }

void expect(CheckResult& r, bool ok, const std::string& what) {
  if (!ok) r.passed = false;
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += (ok ? "" : "MISMATCH ") + what;
}

Q mg1_rho(const LevyModel& m) { return m.rho() + 1; }  // unit drift: rho_load = 1 + varrho

}  // namespace

LevyModel reference_mg1() {
  return LevyModel(Q(-1), Q(0), ParametricJumps{ParametricLaw::exponential(Q(1)), Q(1, 2)});
}

LevyModel gamma_mg1() {
  return LevyModel(Q(-1), Q(0), ParametricJumps{ParametricLaw::gamma(Q(2), Q(2)), Q(1, 3)});
}

LevyModel brownian_model() { return LevyModel(Q(-1), Q(2), JumpSpec::none()); }

CheckResult timed_check(const std::string& id, const std::string& name, double time_limit,
                        const std::function<void(CheckResult&)>& fn) {
  CheckResult r;
  r.id = id;
  r.name = name;
  r.passed = true;
  r.time_limit = time_limit;
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && r.seconds > time_limit) {
    r.passed = false;
    r.detail += "; runtime above " + std::to_string(static_cast<int>(time_limit)) + " s";
  }
  return r;
}

CheckResult check_iglehart() {
  return timed_check("1", "Iglehart E A = mu2/(2(1-rho)^2)", 1, [](CheckResult& r) {
    for (const auto& m : {reference_mg1(), gamma_mg1()}) {
      const auto& law = m.jumps().parametric()->law;
      Q lam = m.lambda().value();
      Q closed = iglehart_EA<Q>(lam, law.raw_moment(2), mg1_rho(m));
      Q got = engine(m, PushSpec::same_as_jumps(), {SpecQ::area(kP1)});
      expect(r, got == closed, law.describe() + ": engine " + fmt(got) + " closed form " + fmt(closed));
    }
    Q ref = engine(reference_mg1(), PushSpec::same_as_jumps(), {SpecQ::area(kP1)});
    expect(r, ref == 4, "reference value " + fmt(ref) + " (expected 4)");
  });
}

CheckResult check_cohen() {
  return timed_check("2", "Cohen E A^2 and symbolic coefficients", 5, [](CheckResult& r) {
    Q got = engine(reference_mg1(), PushSpec::same_as_jumps(), {SpecQ::area(kP1), SpecQ::area(kP1)});
    const LevyModel ref = reference_mg1();
    const auto& law = ref.jumps().parametric()->law;
    Q closed = cohen_EA2<Q>(Q(1, 2), law.raw_moment(2), law.raw_moment(3), law.raw_moment(4), Q(1, 2));
    expect(r, got == 256 && closed == 256, "reference E A^2 = " + fmt(got) + ", closed form " + fmt(closed));

    // E A^2 = a mu4 + b lambda mu2 mu3 + c lambda^2 mu2^3 at fixed lambda = 1/2, mu1 = 1.
    const Q lam(1, 2), rho(1, 2), q = 1 - rho;
    const std::vector<std::array<Q, 3>> points = {{Q(2), Q(6), Q(24)}, {Q(3), Q(10), Q(50)}, {Q(2), Q(7), Q(40)}};
    std::array<std::array<Q, 4>, 3> A;
    for (std::size_t p = 0; p < 3; ++p) {
      const auto& [mu2, mu3, mu4] = points[p];
      RawMomentJumps raw{{Q(lam * 1), Q(lam * mu2), Q(lam * mu3), Q(lam * mu4)}, Q(lam)};
      LevyModel m(Q(-1), Q(0), raw);
      PushSpec push = PushSpec::moments({Q(1), mu2, mu3, mu4});
      A[p] = {mu4, Q(lam * mu2 * mu3), Q(lam * lam * mu2 * mu2 * mu2), engine(m, push, {SpecQ::area(kP1), SpecQ::area(kP1)})};
    }
    // Gaussian elimination over Q.
    for (std::size_t col = 0; col < 3; ++col) {
      std::size_t piv = col;
      while (piv < 3 && sgn(A[piv][col]) == 0) ++piv;
      if (piv == 3) throw NumericalError("parameter points are linearly dependent");
      std::swap(A[col], A[piv]);
      for (std::size_t row = 0; row < 3; ++row) {
        if (row == col || sgn(A[row][col]) == 0) continue;
        Q f = A[row][col] / A[col][col];
        for (std::size_t k = col; k < 4; ++k) A[row][k] -= f * A[col][k];
      }
    }
    Q a = A[0][3] / A[0][0], b = A[1][3] / A[1][1], c = A[2][3] / A[2][2];
    Q ea = 1 / (4 * q * q * q), eb = Q(4, 3) / (q * q * q * q), ec = Q(5, 4) / (q * q * q * q * q);
    expect(r, a == ea, "mu4 coefficient " + fmt(a) + " vs 1/(4(1-rho)^3) = " + fmt(ea));
    expect(r, b == eb, "lambda mu2 mu3 coefficient " + fmt(b) + " vs 4/(3(1-rho)^4) = " + fmt(eb));
    expect(r, c == ec, "lambda^2 mu2^3 coefficient " + fmt(c) + " vs 5/(4(1-rho)^5) = " + fmt(ec));
  });
}

CheckResult check_joint_area_tau() {
  return timed_check("3", "E A tau, E tau, E tau^2", 1, [](CheckResult& r) {
    LevyModel m = reference_mg1();
    PushSpec push = PushSpec::same_as_jumps();
    const auto& law = m.jumps().parametric()->law;
    const Q lam = m.lambda().value(), rho = mg1_rho(m), q = 1 - rho;
    Q at = engine(m, push, {SpecQ::area(kP1), SpecQ::area(kP0)});
    Q closed = joint_EA_tau<Q>(lam, law.raw_moment(2), law.raw_moment(3), rho);
    expect(r, at == closed && at == 56, "E A tau = " + fmt(at) + ", closed form " + fmt(closed));
    Q t1 = engine(m, push, {SpecQ::area(kP0)});
    Q t2 = engine(m, push, {SpecQ::area(kP0), SpecQ::area(kP0)});
    Q c1 = law.raw_moment(1) / q, c2 = law.raw_moment(2) / (q * q * q);
    expect(r, t1 == c1 && t1 == 2, "E tau = " + fmt(t1) + " vs mu1/(1-rho) = " + fmt(c1));
    expect(r, t2 == c2 && t2 == 16, "E tau^2 = " + fmt(t2) + " vs mu2/(1-rho)^3 = " + fmt(c2));
  });
}

CheckResult check_brownian_takacs() {
  return timed_check("4", "Brownian E zeta^k = k! (sigma2/(-2c))^k", 1, [](CheckResult& r) {
    LevyModel m = brownian_model();
    auto table = psi_table<Q>(m, 10);
    Q rate_inv = m.sigma2() / (-2 * m.drift());
    bool all = true;
    for (unsigned k = 0; k <= 10; ++k) {
      Q expected = Q(factorial_z(k)) * power(rate_inv, k);
      all = all && table.zeta_moment(k) == Extended<Q>(expected);
    }
    expect(r, all, "k = 0..10, E zeta^10 = " + table.zeta_moment(10).format());
  });
}

CheckResult check_series_oracle() {
  return timed_check("5", "fixed-point series E N^n tau^m = engine, m+n <= 5", 10, [](CheckResult& r) {
    for (const auto& m : {reference_mg1(), gamma_mg1()}) {
      auto series = gamma_series_fixed_point<Q>(m, PushSpec::same_as_jumps(), 5);
      auto grid = moment_grid(m, PushSpec::same_as_jumps(), SpecQ::area(kP0), SpecQ::jump_sum(kP0), 5);
      int mismatches = 0;
      for (unsigned t = 0; t <= 5; ++t)
        for (unsigned n = 0; t + n <= 5; ++n)
          if (!(grid(t, n) == Extended<Q>(series_moment(series, n, t)))) ++mismatches;
      expect(r, mismatches == 0,
             m.jumps().parametric()->law.describe() + ": 21 cells, " + std::to_string(mismatches) +
                 " mismatches, E N tau = " + grid(1, 1).format());
    }
  });
}

CheckResult check_theta() {
  return timed_check("6", "theta explicit sum = limit definition, u <= 4", 1, [](CheckResult& r) {
    for (const auto& m : {reference_mg1(), gamma_mg1()}) {
      std::string vals;
      bool ok = true;
      for (unsigned u = 1; u <= 4; ++u) {
        Q a = theta_explicit<Q>(m, u), b = theta_from_limit<Q>(m, u);
        ok = ok && a == b;
        vals += (u > 1 ? "," : "") + fmt(a);
      }
      expect(r, ok, m.jumps().parametric()->law.describe() + ": theta(1..4) = " + vals);
    }
    LevyModel m = reference_mg1();
    expect(r, theta_explicit<Q>(m, 1) == 2 && theta_explicit<Q>(m, 2) == 128, "reference theta(1) = 2, theta(2) = 128");
  });
}

CheckResult check_ode_recursion() {
  return timed_check("7", "corrected moment ODE = nested composition, l <= 4", 0, [](CheckResult& r) {
    for (const auto& m : {reference_mg1(), gamma_mg1()}) {
      bool ok = true;
      for (unsigned l = 0; l <= 4; ++l) ok = ok && ode_recursion<Q>(m, l, true) == cost_moment_poly<Q>(m, l);
      expect(r, ok, m.jumps().parametric()->law.describe() + ": l = 0..4");
    }
    LevyModel m = reference_mg1();
    PolyQ p2 = ode_recursion<Q>(m, 2, true);
    PolyQ want{Q(0), Q(128), Q(32), Q(20, 3), Q(1)};
    expect(r, p2 == want, "l = 2: " + p2.to_string());
    PolyQ v1 = ode_recursion<Q>(m, 1, false), c1 = ode_recursion<Q>(m, 1, true);
    expect(r, v1 == PolyQ{Q(0), Q(2)} && c1 == PolyQ{Q(0), Q(2), Q(1)} && !(v1 == c1),
           "without the cross term l = 1 gives " + v1.to_string() + " instead of " + c1.to_string());
    PolyQ v2 = ode_recursion<Q>(m, 2, false);
    r.detail += "; without the cross term l = 2 gives " + v2.to_string();
  });
}

CheckResult check_mc_concordance(const VerifyOptions& options) {
  return timed_check("8", "Monte Carlo: E tau, E A, E A^2, E A tau, E N", 60, [&](CheckResult& r) {
    LevyModel m = reference_mg1();
    PushSpec push = PushSpec::same_as_jumps();
    SimConfig cfg(m, push);
    cfg.replications = options.replications;
    cfg.seed = options.seed;
    cfg.threads = options.threads;
    cfg.functionals = {FunctionalSpec<Real>::area(Polynomial<Real>::monomial(1))};
    std::vector<SampleMonomial> monos = {
        {1, 0, {}, "E tau"}, {0, 0, {1}, "E A"}, {0, 0, {2}, "E A^2"}, {1, 0, {1}, "E A tau"}, {0, 1, {}, "E N"}};
    std::vector<Q> targets = {engine(m, push, {SpecQ::area(kP0)}), engine(m, push, {SpecQ::area(kP1)}),
                              engine(m, push, {SpecQ::area(kP1), SpecQ::area(kP1)}),
                              engine(m, push, {SpecQ::area(kP1), SpecQ::area(kP0)}),
                              engine(m, push, {SpecQ::jump_sum(kP0)})};
    auto est = estimate_moments(cfg, monos);
    for (std::size_t i = 0; i < est.size(); ++i) {
      double target = static_cast<double>(to_real(targets[i]));
      std::ostringstream os;
      os.precision(6);
      os << est[i].label << " = " << est[i].mean << " +- " << est[i].stderr_ << " (engine " << fmt(targets[i])
         << ", " << (est[i].mean - target) / est[i].stderr_ << " se)";
      expect(r, est[i].covers(target, 3.5), os.str());
    }
  });
}

CheckResult check_transform(const VerifyOptions& options) {
  return timed_check("9", "Omega(0, beta) = 1; Omega(0.05, 1) vs reflected-area MC", 120, [&](CheckResult& r) {
    LevyModel m = reference_mg1();
    PushSpec push = PushSpec::same_as_jumps();
    auto grid = area_tau_grid<Q>(m, push, 8);
    for (Q beta : {Q(1, 4), Q(1), Q(4)}) {
      auto p = omega<Q>(m, push, Q(0), beta, 8, &grid);
      expect(r, p.omega == 1, "Omega(0, " + fmt(beta) + ") = " + fmt(p.omega));
    }
    auto p = omega<Real>(m, push, 0.05L, 1.0L, 8);
    SimConfig cfg(m, push);
    cfg.replications = options.replications;
    cfg.seed = options.seed;
    cfg.threads = options.threads;
    cfg.kill_rate = 1.0;
    cfg.alpha = 0.05;
    auto est = simulate_reflected_area(cfg);
    const double om = static_cast<double>(p.omega);
    const double trunc = static_cast<double>(p.truncation());
    std::ostringstream os;
    os.precision(10);
    os << "Omega_8(0.05, 1) = " << om << " (truncation " << trunc << "), MC " << est.mean << " +- " << est.stderr_
       << ", gap " << std::fabs(est.mean - om) << " vs band " << trunc + 3.5 * est.stderr_;
    expect(r, om > 0 && om <= 1, "Omega in (0, 1]");
    expect(r, est.covers(om, 3.5, trunc), os.str());
  });
}

CheckResult check_properties(const VerifyOptions& options) {
  return timed_check("10", "properties: linearity, Gamma_d, permutation sum, rings, moment chains, autocovariance", 0,
                     [&](CheckResult& r) {
    std::mt19937_64 gen(options.seed);
    auto rnd_q = [&]() {
      Q q(static_cast<long>(gen() % 21) - 10, static_cast<long>(gen() % 7) + 1);
      q.canonicalize();
      return q;
    };
    auto rnd_poly = [&](unsigned deg) {
      std::vector<Q> c(deg + 1);
      for (auto& v : c) v = rnd_q();
      return PolyQ(std::move(c));
    };

    // Gamma_a linearity and Gamma_d = lambda Gamma_a.
    bool lin = true, gd = true;
    for (const auto& m : {reference_mg1(), gamma_mg1()}) {
      auto ctx = GammaContext<Q>::create(m, 8);
      for (int trial = 0; trial < 20; ++trial) {
        PolyQ f = rnd_poly(static_cast<unsigned>(gen() % 8)), g = rnd_poly(static_cast<unsigned>(gen() % 8));
        Q a = rnd_q(), b = rnd_q();
        lin = lin && gamma_a(ctx, a * f + b * g) == a * gamma_a(ctx, f) + b * gamma_a(ctx, g);
        gd = gd && gamma_d(ctx, f).poly == m.lambda().value() * gamma_a(ctx, f);
      }
    }
    expect(r, lin, "Gamma_a linear on 40 random pairs");
    expect(r, gd, "Gamma_d = lambda Gamma_a on 40 random inputs");

    // Literal permutation sum: every ordering evaluated separately.
    bool perm = true;
    LevyModel m = reference_mg1();
    PushSpec push = PushSpec::same_as_jumps();
    EngineOptions literal;
    literal.literal = true;
    for (int trial = 0; trial < 12; ++trial) {
      std::size_t len = 1 + gen() % 4;
      std::vector<SpecQ> specs;
      std::vector<PolyQ> pool = {kP0, kP1, PolyQ{Q(1), Q(1)}};
      unsigned jumps = 0;
      for (std::size_t i = 0; i < len; ++i) {
        bool jump = gen() % 3 == 0;
        jumps += jump;
        PolyQ p = pool[gen() % pool.size()];
        specs.push_back(jump ? SpecQ::jump_sum(p) : SpecQ::area(p));
      }
      unsigned degree = 0;
      for (const auto& s : specs) degree += static_cast<unsigned>(s.poly.degree()) + 1;
      auto ctx = GammaContext<Q>::create(m, degree - 1);
      std::vector<std::size_t> idx(len);
      std::iota(idx.begin(), idx.end(), 0);
      Q total(0);
      do {
        std::vector<PolyQ> chain;
        for (auto i : idx) chain.push_back(specs[i].poly);
        total += push_expectation(push.resolve(m), compose_chain(ctx, chain));
      } while (std::next_permutation(idx.begin(), idx.end()));
      total *= power(m.lambda().value(), jumps);
      perm = perm && total == engine(m, push, specs, literal);
    }
    expect(r, perm, "collapsed permutation sum = all (k+l)! orderings on 12 random lists");

    // Ring laws up to degree 12.
    bool ring = true;
    for (int trial = 0; trial < 30; ++trial) {
      PolyQ a = rnd_poly(static_cast<unsigned>(gen() % 13)), b = rnd_poly(static_cast<unsigned>(gen() % 13)),
            c = rnd_poly(static_cast<unsigned>(gen() % 13));
      ring = ring && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a + b == b + a && a * b == b * a &&
             a.integrate_from_zero().derivative() == a;
    }
    expect(r, ring, "ring laws and d/dx integral = id on 30 random triples");

    // Moment chains (E zeta^k)^2 <= E zeta^{k-1} E zeta^{k+1}.
    bool chain = true;
    for (const auto& mm : {reference_mg1(), gamma_mg1(), brownian_model()}) {
      auto t = psi_table<Q>(mm, 10);
      for (unsigned k = 1; k < 10; ++k) {
        Q a = t.zeta_moment(k - 1).value(), b = t.zeta_moment(k).value(), c = t.zeta_moment(k + 1).value();
        chain = chain && sgn(b) >= 0 && b * b <= a * c;
      }
    }
    expect(r, chain, "positivity and log-convexity of E zeta^k, k <= 10, three models");

    // Autocovariance against the coupled simulation.
    Q cov = autocovariance<Q>(m, 1, Q(1), Q(2));
    auto mean = cost_moment_poly<Q>(m, 1);
    SimConfig cfg(m, push);
    cfg.replications = options.replications;
    cfg.seed = options.seed ^ 0x5bd1e995u;
    cfg.threads = options.threads;
    auto est = simulate_cost_covariance(cfg, 1, 1.0, 2.0, static_cast<double>(to_real(mean.eval(Q(1)))),
                                        static_cast<double>(to_real(mean.eval(Q(2)))));
    double target = static_cast<double>(to_real(cov));
    std::ostringstream os;
    os.precision(6);
    os << "Cov(A_1(1), A_1(2)) = " << fmt(cov) << ", MC " << est.mean << " +- " << est.stderr_;
    expect(r, est.covers(target, 3.5), os.str());
    Q v1 = cost_variance<Q>(m, 1, Q(1)), v2 = cost_variance<Q>(m, 1, Q(2));
    expect(r, cov * cov <= v1 * v2, "Cauchy-Schwarz Cov^2 <= Var Var");
  });
}

std::vector<CheckResult> run_all_checks(const VerifyOptions& options) {
  return {check_iglehart(),      check_cohen(),      check_joint_area_tau(),
          check_brownian_takacs(), check_series_oracle(), check_theta(),
          check_ode_recursion(),   check_mc_concordance(options), check_transform(options),
          check_properties(options)};
}

}  // namespace levymom
