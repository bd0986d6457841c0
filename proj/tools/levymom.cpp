// levymom command-line frontend.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levymom/config.hpp"
#include "levymom/costproc.hpp"
#include "levymom/mcsim.hpp"
#include "levymom/mg1.hpp"
#include "levymom/output.hpp"
#include "levymom/transform.hpp"
#include "levymom/verify.hpp"

using namespace levymom;

namespace {

/// Exit 2: the request itself is malformed.
struct UsageError : Error {
  using Error::Error;
};

struct Globals {
  std::string config_path;
  std::string format = "csv";
  std::string scalar;
  std::optional<std::uint64_t> seed;
  std::string push;
  std::string output;
  unsigned threads = 1;
};

struct Session {
  Globals g;
  std::string command;
  std::optional<RunConfig> config;
  OutputFormat format = OutputFormat::Csv;

  const RunConfig& cfg() const {
    if (!config) throw UsageError("command '" + command + "' needs --config");
    return *config;
  }
  const LevyModel& model() const { return cfg().model; }
  const PushSpec& push() const { return cfg().push; }
  ScalarMode scalar() const { return config ? config->scalar : ScalarMode::Rational; }
  std::uint64_t seed() const { return config ? config->seed : (g.seed ? *g.seed : 20240521); }

  void emit(const Table& table) const {
    Provenance prov{command, config ? config->hash : 0, scalar(), seed()};
    if (g.output.empty()) {
      write_table(std::cout, format, prov, table);
      return;
    }
    std::ofstream out(g.output);
    if (!out) throw UsageError("cannot write '" + g.output + "'");
    write_table(out, format, prov, table);
  }
};

Rational arg_rational(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(name + ": " + e.what());
  }
}

bool is_real(const Session& s) { return s.scalar() == ScalarMode::Real; }

// ---- psi ------------------------------------------------------------------

template <Field T>
void psi_rows(const Session& s, unsigned order, Table& t) {
  auto table = psi_table<T>(s.model(), order);
  for (unsigned k = 1; k <= order; ++k)
    t.add({static_cast<long long>(k), make_cell(table.zeta_moment(k)), make_cell(table[k])});
}

void cmd_psi(const Session& s, unsigned order) {
  Table t{{"k", "E_zeta_k", "psi_k"}, {}};
  if (is_real(s)) psi_rows<Real>(s, order, t);
  else psi_rows<Rational>(s, order, t);
  s.emit(t);
}

// ---- moment ---------------------------------------------------------------

template <Field T>
void moment_rows(const Session& s, const std::vector<FunctionalSpec<Rational>>& specs, bool literal, Table& t) {
  std::vector<FunctionalSpec<T>> cast;
  std::string label;
  for (const auto& f : specs) {
    cast.push_back(f.template cast<T>());
    label += (label.empty() ? "" : " ") + f.describe();
  }
  EngineOptions options;
  options.literal = literal;
  auto r = joint_moment(s.model(), s.push(), cast, options);
  t.add({label, make_cell(r.value), static_cast<long long>(r.psi_order), static_cast<long long>(r.chains_evaluated),
         r.permutations.get_str()});
}

template <Field T>
void grid_rows(const Session& s, const FunctionalSpec<Rational>& a, const FunctionalSpec<Rational>& b, unsigned M,
               bool literal, Table& t) {
  EngineOptions options;
  options.literal = literal;
  auto grid = moment_grid(s.model(), s.push(), a.template cast<T>(), b.template cast<T>(), M, options);
  for (unsigned m = 0; m <= M; ++m)
    for (unsigned n = 0; m + n <= M; ++n)
      t.add({static_cast<long long>(m), static_cast<long long>(n), make_cell(grid(m, n))});
}

void cmd_moment(const Session& s, const std::vector<std::string>& specs, bool literal, int grid,
                const std::string& first, const std::string& second) {
  auto parse = [](const std::string& x) {
    try {
      return parse_functional(x);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  };
  if (grid >= 0) {
    auto a = parse(first), b = parse(second);
    Table t{{"m", "n", "moment"}, {}};
    if (is_real(s)) grid_rows<Real>(s, a, b, static_cast<unsigned>(grid), literal, t);
    else grid_rows<Rational>(s, a, b, static_cast<unsigned>(grid), literal, t);
    s.emit(t);
    return;
  }
  if (specs.empty()) throw UsageError("moment needs at least one --spec or --grid");
  std::vector<FunctionalSpec<Rational>> parsed;
  for (const auto& x : specs) parsed.push_back(parse(x));
  Table t{{"functionals", "moment", "psi_order", "chains", "permutations"}, {}};
  if (is_real(s)) moment_rows<Real>(s, parsed, literal, t);
  else moment_rows<Rational>(s, parsed, literal, t);
  s.emit(t);
}

// ---- mg1-check ------------------------------------------------------------

int cmd_mg1_check(const Session& s) {
  const LevyModel& m = s.model();
  if (sgn(m.sigma2()) != 0 || m.drift() != -1 || !m.lambda().finite())
    throw UsageError("mg1-check needs a compound Poisson model with drift -1 and sigma2 = 0");
  if (!s.push().is_same_as_jumps()) throw UsageError("mg1-check needs the push to follow the jump law");
  const Rational lam = m.lambda().value();
  std::vector<Rational> mu(5, Rational(1));
  for (unsigned n = 1; n <= 4; ++n) {
    auto eta = m.jumps().eta(n);
    if (!eta.finite()) throw FiniteMomentRequired("mg1-check needs mu_4 finite");
    mu[n] = eta.value() / lam;
  }
  const Rational rho = lam * mu[1], q = 1 - rho;
  using S = FunctionalSpec<Rational>;
  const auto P0 = Polynomial<Rational>::constant(1), P1 = Polynomial<Rational>::monomial(1);
  auto engine = [&](std::vector<S> specs) { return joint_moment(m, s.push(), specs).value.value(); };

  struct Row {
    std::string name;
    Rational engine, closed;
  };
  std::vector<Row> rows = {
      {"Iglehart E A", engine({S::area(P1)}), iglehart_EA<Rational>(lam, mu[2], rho)},
      {"Cohen E A^2", engine({S::area(P1), S::area(P1)}), cohen_EA2<Rational>(lam, mu[2], mu[3], mu[4], rho)},
      {"E A tau", engine({S::area(P1), S::area(P0)}), joint_EA_tau<Rational>(lam, mu[2], mu[3], rho)},
      {"E tau", engine({S::area(P0)}), Rational(mu[1] / q)},
      {"E tau^2", engine({S::area(P0), S::area(P0)}), Rational(mu[2] / (q * q * q))},
  };
  // Engine against the joint LST series of (N, tau) for every mixed moment of
  // total order <= 3.
  const unsigned M = 3;
  auto series = gamma_series_fixed_point<Rational>(m, s.push(), M);
  for (unsigned d = 1; d <= M; ++d) {
    for (unsigned n = d + 1; n-- > 0;) {
      unsigned k = d - n;
      std::vector<S> specs(n, S::jump_sum(P0));
      specs.insert(specs.end(), k, S::area(P0));
      std::string name = "series E N^" + std::to_string(n) + " tau^" + std::to_string(k);
      rows.push_back({name, engine(specs), series_moment(series, n, k)});
    }
  }
  Table t{{"check", "engine", "reference", "pass"}, {}};
  bool ok = true;
  for (const auto& r : rows) {
    bool pass = r.engine == r.closed;
    ok = ok && pass;
    t.add({r.name, r.engine, r.closed, pass});
  }
  s.emit(t);
  if (!ok) std::cerr << "levymom: mg1-check failed\n";
  return ok ? 0 : 1;
}

// ---- omega ----------------------------------------------------------------

void cmd_omega(const Session& s, const std::string& alpha_text, const std::string& beta_text, unsigned order) {
  Rational alpha = arg_rational(alpha_text, "--alpha"), beta = arg_rational(beta_text, "--beta");
  Table t{{"alpha", "beta", "order", "phi_bar", "pi", "xi", "omega", "last_term", "truncation"}, {}};
  auto add = [&](const auto& p) {
    t.add({make_cell(p.alpha), make_cell(p.beta), static_cast<long long>(p.order), make_cell(p.phi_bar),
           make_cell(p.pi), make_cell(p.xi), make_cell(p.omega), make_cell(p.last_term), make_cell(p.truncation())});
    using std::fabs;
    auto mag = [](auto v) { return v < 0 ? -v : v; };
    if (mag(p.last_term) > mag(p.xi) / 100)
      std::cerr << "levymom: warning: order-" << p.order << " term of Xi exceeds 1% of Xi; the series may not have "
                << "converged\n";
  };
  if (!is_real(s) && sgn(alpha) == 0) {
    add(omega<Rational>(s.model(), s.push(), alpha, beta, order));
  } else {
    add(omega<Real>(s.model(), s.push(), to_real(alpha), to_real(beta), order));
  }
  s.emit(t);
}

// ---- cost -----------------------------------------------------------------

template <Field T>
void cost_rows(const Session& s, unsigned k, unsigned ell, const std::optional<Rational>& x, Table& t) {
  std::vector<FunctionalSpec<T>> specs(ell, FunctionalSpec<T>::area(Polynomial<T>::monomial(k)));
  Polynomial<T> engine = ell == 0 ? Polynomial<T>::constant(FieldTraits<T>::from_int(1))
                                  : joint_moment_poly<T>(s.model(), specs).poly;
  std::optional<Polynomial<T>> corrected, verbatim;
  if (k == 1) {
    corrected = ode_recursion<T>(s.model(), ell, true);
    verbatim = ode_recursion<T>(s.model(), ell, false);
  }
  auto coeff = [](const std::optional<Polynomial<T>>& p, unsigned n) -> Cell {
    if (!p) return std::string("n/a");
    return make_cell(p->coeff(n));
  };
  int deg = std::max({engine.degree(), corrected ? corrected->degree() : 0, verbatim ? verbatim->degree() : 0, 0});
  for (unsigned n = 0; n <= static_cast<unsigned>(deg); ++n)
    t.add({"x^" + std::to_string(n), make_cell(engine.coeff(n)), coeff(corrected, n), coeff(verbatim, n)});
  if (x) {
    T xv = field_cast<T>(*x);
    auto at = [&](const std::optional<Polynomial<T>>& p) -> Cell {
      if (!p) return std::string("n/a");
      return make_cell(p->eval(xv));
    };
    t.add({"value at x=" + format_rational(*x), make_cell(engine.eval(xv)), at(corrected), at(verbatim)});
  }
}

void cmd_cost(const Session& s, unsigned k, unsigned ell, const std::string& x_text) {
  std::optional<Rational> x;
  if (!x_text.empty()) x = arg_rational(x_text, "--x");
  Table t{{"term", "engine", "ode_corrected", "ode_verbatim"}, {}};
  if (is_real(s)) cost_rows<Real>(s, k, ell, x, t);
  else cost_rows<Rational>(s, k, ell, x, t);
  s.emit(t);
}

// ---- autocov --------------------------------------------------------------

template <Field T>
std::vector<Cell> autocov_row(const Session& s, unsigned k, const Rational& x1q, const Rational& x2q) {
  const T x1 = field_cast<T>(x1q), x2 = field_cast<T>(x2q);
  auto mean = joint_moment_poly<T>(s.model(), {FunctionalSpec<T>::area(Polynomial<T>::monomial(k))}).poly;
  T cross = cost_cross_moment<T>(s.model(), k, x1, x2);
  T cov = autocovariance<T>(s.model(), k, x1, x2);
  T v1 = cost_variance<T>(s.model(), k, x1), v2 = cost_variance<T>(s.model(), k, x2);
  Real corr = FieldTraits<T>::to_real(cov) / std::sqrt(FieldTraits<T>::to_real(v1) * FieldTraits<T>::to_real(v2));
  return {static_cast<long long>(k), make_cell(x1), make_cell(x2), make_cell(mean.eval(x1)), make_cell(mean.eval(x2)),
          make_cell(v1), make_cell(v2), make_cell(cross), make_cell(cov), corr};
}

void cmd_autocov(const Session& s, unsigned k, const std::string& x1_text, const std::string& x2_text,
                 std::uint64_t mc_reps) {
  Rational x1 = arg_rational(x1_text, "--x1"), x2 = arg_rational(x2_text, "--x2");
  if (sgn(x1) < 0 || x1 > x2) throw UsageError("autocov needs 0 <= x1 <= x2");
  Table t{{"k", "x1", "x2", "mean_x1", "mean_x2", "var_x1", "var_x2", "cross_moment", "autocovariance", "correlation"},
          {}};
  auto row = is_real(s) ? autocov_row<Real>(s, k, x1, x2) : autocov_row<Rational>(s, k, x1, x2);
  if (mc_reps > 0) {
    auto mean = joint_moment_poly<Rational>(s.model(), {FunctionalSpec<Rational>::area(Polynomial<Rational>::monomial(k))})
                    .poly;
    SimConfig cfg(s.model(), s.push());
    cfg.replications = mc_reps;
    cfg.seed = s.seed();
    cfg.threads = s.g.threads;
    auto est = simulate_cost_covariance(cfg, k, static_cast<double>(to_real(x1)), static_cast<double>(to_real(x2)),
                                        static_cast<double>(to_real(mean.eval(x1))),
                                        static_cast<double>(to_real(mean.eval(x2))));
    t.columns.insert(t.columns.end(), {"mc_autocovariance", "mc_stderr"});
    row.push_back(static_cast<Real>(est.mean));
    row.push_back(static_cast<Real>(est.stderr_));
  }
  t.add(row);
  s.emit(t);
}

// ---- theta ----------------------------------------------------------------

template <Field T>
void theta_rows(const Session& s, unsigned max_u, Table& t) {
  for (unsigned u = 1; u <= max_u; ++u) {
    T a = theta_explicit<T>(s.model(), u), b = theta_from_limit<T>(s.model(), u);
    bool agree;
    if constexpr (std::is_same_v<T, Rational>) agree = a == b;
    else agree = std::fabs(a - b) <= 1e-12L * std::max(std::fabs(a), std::fabs(b));
    t.add({static_cast<long long>(u), make_cell(a), make_cell(b), agree});
  }
}

void cmd_theta(const Session& s, unsigned max_u) {
  Table t{{"u", "theta_explicit", "theta_limit", "agree"}, {}};
  if (is_real(s)) theta_rows<Real>(s, max_u, t);
  else theta_rows<Rational>(s, max_u, t);
  s.emit(t);
}

// ---- simulate -------------------------------------------------------------

SimConfig sim_config(const Session& s, std::uint64_t reps, double euler_dt) {
  SimConfig cfg(s.model(), s.push());
  cfg.replications = reps;
  cfg.seed = s.seed();
  cfg.threads = s.g.threads;
  if (euler_dt > 0) {
    cfg.allow_euler = true;
    cfg.euler_dt = euler_dt;
  }
  return cfg;
}

std::vector<Cell> estimate_row(const SimEstimate& e) {
  return {e.label,
          static_cast<Real>(e.mean),
          static_cast<Real>(e.stderr_),
          static_cast<Real>(e.ci_low),
          static_cast<Real>(e.ci_high),
          static_cast<long long>(e.replications),
          static_cast<long long>(e.seed)};
}

const std::vector<std::string> kEstimateColumns = {"estimate", "mean", "stderr", "ci95_low", "ci95_high",
                                                   "replications", "seed"};

void cmd_simulate(const Session& s, std::uint64_t reps, const std::vector<std::string>& functionals, double euler_dt) {
  SimConfig cfg = sim_config(s, reps, euler_dt);
  std::vector<SampleMonomial> monos = {{1, 0, {}, "E tau"}, {2, 0, {}, "E tau^2"}, {0, 1, {}, "E N"}};
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    FunctionalSpec<Rational> f;
    try {
      f = parse_functional(functionals[i]);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
    cfg.functionals.push_back(f.cast<Real>());
    std::vector<unsigned> one(functionals.size(), 0), two(functionals.size(), 0);
    one[i] = 1;
    two[i] = 2;
    monos.push_back({0, 0, one, "E " + f.describe()});
    monos.push_back({0, 0, two, "E (" + f.describe() + ")^2"});
    monos.push_back({1, 0, one, "E " + f.describe() + " tau"});
  }
  Table t{kEstimateColumns, {}};
  for (const auto& e : estimate_moments(cfg, monos)) t.add(estimate_row(e));
  s.emit(t);
}

void cmd_simulate_reflected(const Session& s, std::uint64_t reps, double alpha, double beta, int order) {
  if (!(alpha >= 0) || !(beta > 0)) throw UsageError("simulate-reflected needs alpha >= 0 and beta > 0");
  SimConfig cfg = sim_config(s, reps, 0);
  cfg.alpha = alpha;
  cfg.kill_rate = beta;
  auto est = simulate_reflected_area(cfg);
  est.label = "E exp(-alpha A)";
  Table t{kEstimateColumns, {}};
  t.columns.insert(t.columns.end(), {"omega", "truncation"});
  auto row = estimate_row(est);
  if (order > 0) {
    auto p = omega<Real>(s.model(), s.push(), alpha, beta, static_cast<unsigned>(order));
    row.push_back(p.omega);
    row.push_back(p.truncation());
  } else {
    row.push_back(std::string("n/a"));
    row.push_back(std::string("n/a"));
  }
  t.add(row);
  s.emit(t);
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const Session& s, std::uint64_t reps) {
  VerifyOptions options;
  options.replications = reps;
  options.seed = s.seed();
  options.threads = s.g.threads;
  // Timings go to stderr so the table is reproducible for a given seed.
  Table t{{"criterion", "name", "pass", "detail"}, {}};
  bool ok = true;
  std::vector<std::string> failed;
  for (const auto& r : run_all_checks(options)) {
    ok = ok && r.passed;
    if (!r.passed) failed.push_back(r.id + " (" + r.name + ")");
    t.add({r.id, r.name, r.passed, r.detail});
    std::cerr << "levymom: criterion " << r.id << " took " << r.seconds << " s\n";
  }
  s.emit(t);
  for (const auto& f : failed) std::cerr << "levymom: check failed: " << f << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments and transforms of first-passage areas of spectrally positive Levy processes"};
  app.set_version_flag("--version", std::string(kArtifactVersion));
  app.require_subcommand(1);
  Session s;
  app.add_option("-c,--config", s.g.config_path, "YAML model configuration");
  app.add_option("-f,--format", s.g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--scalar", s.g.scalar, "Override the scalar mode")->check(CLI::IsMember({"rational", "real"}));
  app.add_option("--seed", s.g.seed, "Override the seed");
  app.add_option("--push", s.g.push, "Override the push: same, det:X, exp:R, gamma:S,R, uniform:A,B, moments:...");
  app.add_option("-o,--output", s.g.output, "Write the table to a file instead of stdout");
  app.add_option("--threads", s.g.threads, "Worker threads for simulation")->check(CLI::PositiveNumber);

  unsigned psi_order = 4;
  auto* psi = app.add_subcommand("psi", "E zeta^k and psi_k from the recursion");
  psi->add_option("--order", psi_order, "Highest k")->check(CLI::Range(1u, 200u));

  std::vector<std::string> specs;
  bool literal = false;
  int grid = -1;
  std::string first = "A:1", second = "D:1";
  auto* moment = app.add_subcommand("moment", "Joint moment of area and jump-sum functionals");
  moment->add_option("--spec", specs, "Functional, e.g. A:x or D:1 (repeatable)");
  moment->add_flag("--literal", literal, "Permutation-sum treatment of jump-sum factors");
  moment->add_option("--grid", grid, "Emit E[F1^m F2^n] for m + n <= M instead")->check(CLI::Range(0, 40));
  moment->add_option("--first", first, "F1 for --grid");
  moment->add_option("--second", second, "F2 for --grid");

  auto* mg1 = app.add_subcommand("mg1-check", "Engine against the M/G/1 closed forms");

  std::string alpha = "0.05", beta = "1";
  unsigned omega_order = 8;
  auto* om = app.add_subcommand("omega", "Omega(alpha, beta) with the truncated Xi series");
  om->add_option("--alpha", alpha, "alpha >= 0");
  om->add_option("--beta", beta, "beta > 0");
  om->add_option("--order", omega_order, "Truncation order M")->check(CLI::Range(1u, 40u));

  unsigned cost_k = 1, cost_ell = 2;
  std::string cost_x;
  auto* cost = app.add_subcommand("cost", "Moment polynomial E A_k(x)^l, engine and moment ODE");
  cost->add_option("--k", cost_k, "Cost power k")->check(CLI::Range(0u, 12u));
  cost->add_option("--ell", cost_ell, "Moment order l")->check(CLI::Range(0u, 12u));
  cost->add_option("--x", cost_x, "Also evaluate at this starting level");

  unsigned ac_k = 1;
  std::string x1 = "1", x2 = "2";
  std::uint64_t ac_reps = 0;
  auto* autocov = app.add_subcommand("autocov", "Cov(A_k(x1), A_k(x2))");
  autocov->add_option("--k", ac_k, "Cost power k")->check(CLI::Range(0u, 12u));
  autocov->add_option("--x1", x1, "First level");
  autocov->add_option("--x2", x2, "Second level, x2 >= x1");
  autocov->add_option("--simulate", ac_reps, "Also estimate by coupled simulation with this many replications");

  unsigned max_u = 4;
  auto* theta = app.add_subcommand("theta", "theta(u) from the explicit sum and from the limit");
  theta->add_option("--max-u", max_u, "Largest u")->check(CLI::Range(1u, 12u));

  std::uint64_t reps = 100000;
  std::vector<std::string> functionals;
  double euler_dt = 0;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo busy cycles");
  sim->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  sim->add_option("--functional", functionals, "Functional to estimate, e.g. A:x (repeatable)");
  sim->add_option("--euler-dt", euler_dt, "Allow the biased Euler scheme for sigma2 > 0 with this step");

  double r_alpha = 0.05, r_beta = 1;
  int r_order = 8;
  auto* simr = app.add_subcommand("simulate-reflected", "Monte Carlo E exp(-alpha A) for the killed reflected workload");
  simr->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  simr->add_option("--alpha", r_alpha, "alpha >= 0");
  simr->add_option("--beta", r_beta, "Killing rate beta > 0");
  simr->add_option("--order", r_order, "Also report Omega at this order (0 to skip)");

  std::uint64_t verify_reps = 1000000;
  auto* verify = app.add_subcommand("verify", "Full analytic-versus-oracle suite");
  verify->add_option("--reps", verify_reps, "Monte Carlo replications")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  s.command = sub->get_name();
  try {
    s.format = parse_output_format(s.g.format);
    if (!s.g.config_path.empty()) {
      s.config = load_config(s.g.config_path);
      if (!s.g.scalar.empty()) s.config->scalar = parse_scalar_mode(s.g.scalar);
      if (s.g.seed) s.config->seed = *s.g.seed;
      if (!s.g.push.empty()) s.config->push = parse_push(s.g.push);
    } else if (sub != verify) {
      throw UsageError("command '" + s.command + "' needs --config");
    }

    if (sub == psi) cmd_psi(s, psi_order);
    else if (sub == moment) cmd_moment(s, specs, literal, grid, first, second);
    else if (sub == mg1) return cmd_mg1_check(s);
    else if (sub == om) cmd_omega(s, alpha, beta, omega_order);
    else if (sub == cost) cmd_cost(s, cost_k, cost_ell, cost_x);
    else if (sub == autocov) cmd_autocov(s, ac_k, x1, x2, ac_reps);
    else if (sub == theta) cmd_theta(s, max_u);
    else if (sub == sim) cmd_simulate(s, reps, functionals, euler_dt);
    else if (sub == simr) cmd_simulate_reflected(s, reps, r_alpha, r_beta, r_order);
    else if (sub == verify) return cmd_verify(s, verify_reps);
  } catch (const UsageError& e) {
    std::cerr << "levymom: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "levymom: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "levymom: " << e.what() << "\n";
    return 2;
  } catch (const InvalidModel& e) {
    std::cerr << "levymom: invalid model: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "levymom: " << s.command << " failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
