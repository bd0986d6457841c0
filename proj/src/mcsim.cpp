#include "levymom/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace levymom {

// ------------------------------------------------------------------ Philox

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

ReplicationRng::ReplicationRng(std::uint64_t seed, std::uint64_t replication)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0, 0, static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32)} {}

ReplicationRng::result_type ReplicationRng::operator()() {
  if (used_ >= 4) {
    buf_ = Philox4x32::block(ctr_, key_);
    if (++ctr_[0] == 0) ++ctr_[1];
    used_ = 0;
  }
  std::uint64_t hi = buf_[used_];
  std::uint64_t lo = buf_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double ReplicationRng::uniform() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double ReplicationRng::exponential(double rate) { return -std::log(uniform()) / rate; }

double ReplicationRng::normal() {
  if (spare_normal_) {
    double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2 * uniform() - 1;
    v = 2 * uniform() - 1;
    s = u * u + v * v;
  } while (s >= 1 || s == 0);
  double f = std::sqrt(-2 * std::log(s) / s);
  spare_normal_ = v * f;
  return u * f;
}

double sample_law(const ParametricLaw& law, ReplicationRng& rng) {
  const double a = static_cast<double>(to_real(law.first()));
  const double b = static_cast<double>(to_real(law.second()));
  switch (law.family()) {
    case Family::Exponential: return rng.exponential(a);
    case Family::Deterministic: return a;
    case Family::Gamma: {
      std::gamma_distribution<double> g(a, 1 / b);
      return g(rng);
    }
    case Family::Uniform: return a + (b - a) * rng.uniform();
  }
  return 0;
}

bool SimEstimate::covers(double target, double k, double slack) const {
  return std::fabs(mean - target) <= k * stderr_ + slack;
}

// ------------------------------------------------------------- reduction

namespace {

constexpr std::uint64_t kBlock = 4096;

struct Moments {
  double n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    n += 1;
    double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }

  // Chan et al. parallel combination.
  static Moments combine(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments out;
    out.n = a.n + b.n;
    double d = b.mean - a.mean;
    out.mean = a.mean + d * b.n / out.n;
    out.m2 = a.m2 + b.m2 + d * d * a.n * b.n / out.n;
    return out;
  }
};

std::vector<Moments> pairwise(std::vector<std::vector<Moments>>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  auto left = pairwise(blocks, lo, mid);
  auto right = pairwise(blocks, mid, hi);
  for (std::size_t i = 0; i < left.size(); ++i) left[i] = Moments::combine(left[i], right[i]);
  return left;
}

struct Cpp {
  double speed;  // |c|
  double lambda;
  const ParametricLaw* law;
};

Cpp exact_cpp(const LevyModel& model) {
  if (sgn(model.sigma2()) != 0) throw EulerRequired("exact simulation needs sigma2 = 0 (enable the Euler scheme)");
  if (!model.lambda().finite()) throw Unsupported("infinite-activity jumps cannot be simulated");
  Cpp cpp{static_cast<double>(to_real(-model.drift())), static_cast<double>(to_real(model.lambda().value())),
          nullptr};
  if (cpp.lambda > 0) {
    const auto* p = model.jumps().parametric();
    if (p == nullptr) throw Unsupported("simulation needs a parametric jump law");
    cpp.law = &p->law;
  }
  return cpp;
}

double sample_push(const PushSpec& push, ReplicationRng& rng) {
  if (const auto* d = push.deterministic_value()) return static_cast<double>(to_real(d->x));
  if (const auto* law = push.law()) return sample_law(*law, rng);
  throw Unsupported("simulation needs a deterministic or parametric push");
}

struct PolyD {
  std::vector<double> c;
  double operator()(double x) const {
    double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

PolyD to_double(const Polynomial<Real>& p) {
  PolyD out;
  for (Real v : p.coeffs()) out.c.push_back(static_cast<double>(v));
  return out;
}

struct Functional {
  bool area;
  PolyD f;
  PolyD antiderivative;
};

std::vector<Functional> prepare(const std::vector<FunctionalSpec<Real>>& specs) {
  std::vector<Functional> out;
  for (const auto& s : specs) {
    out.push_back({s.kind == FunctionalKind::Area, to_double(s.poly), to_double(s.poly.integrate_from_zero())});
  }
  return out;
}

// integral over a segment where the level falls linearly from w0 to w1.
inline double segment_area(const Functional& fn, double w0, double w1, double speed) {
  return (fn.antiderivative(w0) - fn.antiderivative(w1)) / speed;
}

CycleSample busy_cycle_exact(const Cpp& cpp, const PushSpec& push, const std::vector<Functional>& fns,
                             ReplicationRng& rng) {
  CycleSample s;
  s.values.assign(fns.size(), 0.0);
  double w = sample_push(push, rng);
  while (true) {
    const double hit = w / cpp.speed;
    const double e = cpp.lambda > 0 ? rng.exponential(cpp.lambda) : std::numeric_limits<double>::infinity();
    if (e >= hit) {
      for (std::size_t i = 0; i < fns.size(); ++i)
        if (fns[i].area) s.values[i] += segment_area(fns[i], w, 0.0, cpp.speed);
      s.tau += hit;
      return s;
    }
    const double w1 = w - cpp.speed * e;
    for (std::size_t i = 0; i < fns.size(); ++i) {
      s.values[i] += fns[i].area ? segment_area(fns[i], w, w1, cpp.speed) : fns[i].f(w1);
    }
    s.tau += e;
    ++s.jumps;
    w = w1 + sample_law(*cpp.law, rng);
  }
}

CycleSample busy_cycle_euler(const SimConfig& config, const std::vector<Functional>& fns, ReplicationRng& rng) {
  const double c = static_cast<double>(to_real(config.model.drift()));
  const double sigma = std::sqrt(static_cast<double>(to_real(config.model.sigma2())));
  const auto lam_ext = config.model.lambda();
  if (!lam_ext.finite()) throw Unsupported("infinite-activity jumps cannot be simulated");
  const double lambda = static_cast<double>(to_real(lam_ext.value()));
  const ParametricLaw* law = nullptr;
  if (lambda > 0) {
    const auto* p = config.model.jumps().parametric();
    if (p == nullptr) throw Unsupported("simulation needs a parametric jump law");
    law = &p->law;
  }
  const double dt = config.euler_dt;
  const double sdt = sigma * std::sqrt(dt);
  CycleSample s;
  s.values.assign(fns.size(), 0.0);
  double w = sample_push(config.push.resolve(config.model), rng);
  double t = 0;
  double next = lambda > 0 ? rng.exponential(lambda) : std::numeric_limits<double>::infinity();
  while (w > 0) {
    for (std::size_t i = 0; i < fns.size(); ++i)
      if (fns[i].area) s.values[i] += fns[i].f(w) * dt;
    double w1 = w + c * dt + sdt * rng.normal();
    t += dt;
    while (next <= t) {
      for (std::size_t i = 0; i < fns.size(); ++i)
        if (!fns[i].area) s.values[i] += fns[i].f(w1);
      ++s.jumps;
      w1 += sample_law(*law, rng);
      next += rng.exponential(lambda);
    }
    w = w1;
  }
  s.tau = t;
  return s;
}

}  // namespace

std::vector<SimEstimate> reduce_replications(const SimConfig& config, std::size_t outputs,
                                             const std::function<void(std::uint64_t, std::vector<double>&)>& f) {
  if (config.replications == 0) throw InvalidArgument("replications must be positive");
  const std::uint64_t R = config.replications;
  const std::size_t nblocks = static_cast<std::size_t>((R + kBlock - 1) / kBlock);
  std::vector<std::vector<Moments>> blocks(nblocks, std::vector<Moments>(outputs));
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    std::vector<double> vals(outputs);
    for (std::size_t b = next++; b < nblocks; b = next++) {
      const std::uint64_t lo = b * kBlock;
      const std::uint64_t hi = std::min<std::uint64_t>(R, lo + kBlock);
      for (std::uint64_t r = lo; r < hi; ++r) {
        f(r, vals);
        for (std::size_t i = 0; i < outputs; ++i) blocks[b][i].add(vals[i]);
      }
    }
  };
  unsigned threads = std::max(1u, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  auto total = pairwise(blocks, 0, nblocks);
  std::vector<SimEstimate> out(outputs);
  for (std::size_t i = 0; i < outputs; ++i) {
    const auto& m = total[i];
    double var = m.n > 1 ? m.m2 / (m.n - 1) : 0.0;
    out[i].mean = m.mean;
    out[i].stderr_ = std::sqrt(var / m.n);
    out[i].ci_low = m.mean - 1.96 * out[i].stderr_;
    out[i].ci_high = m.mean + 1.96 * out[i].stderr_;
    out[i].replications = R;
    out[i].seed = config.seed;
  }
  return out;
}

CycleSample simulate_busy_cycle(const SimConfig& config, std::uint64_t replication) {
  ReplicationRng rng(config.seed, replication);
  auto fns = prepare(config.functionals);
  if (sgn(config.model.sigma2()) != 0) {
    if (!config.allow_euler) throw EulerRequired("sigma2 > 0 needs the Euler scheme (biased); enable it explicitly");
    return busy_cycle_euler(config, fns, rng);
  }
  return busy_cycle_exact(exact_cpp(config.model), config.push.resolve(config.model), fns, rng);
}

std::vector<SimEstimate> estimate_moments(const SimConfig& config, const std::vector<SampleMonomial>& monomials) {
  for (const auto& m : monomials) {
    if (m.functionals.size() > config.functionals.size()) {
      throw InvalidArgument("monomial refers to more functionals than configured");
    }
  }
  const bool euler = sgn(config.model.sigma2()) != 0;
  if (euler && !config.allow_euler) throw EulerRequired("sigma2 > 0 needs the Euler scheme (biased); enable it explicitly");
  const auto fns = prepare(config.functionals);
  const PushSpec push = config.push.resolve(config.model);
  std::optional<Cpp> cpp;
  if (!euler) cpp = exact_cpp(config.model);

  auto f = [&](std::uint64_t r, std::vector<double>& vals) {
    ReplicationRng rng(config.seed, r);
    CycleSample s = euler ? busy_cycle_euler(config, fns, rng) : busy_cycle_exact(*cpp, push, fns, rng);
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      const auto& m = monomials[i];
      double v = std::pow(s.tau, m.tau) * std::pow(static_cast<double>(s.jumps), m.jumps);
      for (std::size_t j = 0; j < m.functionals.size(); ++j) v *= std::pow(s.values[j], m.functionals[j]);
      vals[i] = v;
    }
  };
  auto out = reduce_replications(config, monomials.size(), f);
  for (std::size_t i = 0; i < monomials.size(); ++i) out[i].label = monomials[i].label;
  return out;
}

SimEstimate simulate_reflected_area(const SimConfig& config) {
  if (!config.kill_rate || *config.kill_rate <= 0) throw InvalidArgument("reflected-area runs need a kill rate beta > 0");
  const Cpp cpp = exact_cpp(config.model);
  const PushSpec push = config.push.resolve(config.model);
  const double beta = *config.kill_rate;
  const double alpha = config.alpha;
  const double inf = std::numeric_limits<double>::infinity();

  auto f = [&](std::uint64_t r, std::vector<double>& vals) {
    ReplicationRng rng(config.seed, r);
    const double kill = rng.exponential(beta);
    double w = sample_push(push, rng);
    double t = 0;
    double area = 0;
    double next = cpp.lambda > 0 ? rng.exponential(cpp.lambda) : inf;
    while (true) {
      if (w > 0) {
        const double hit = t + w / cpp.speed;
        const double end = std::min({next, hit, kill});
        const double w1 = end == hit ? 0.0 : w - cpp.speed * (end - t);
        area += (w + w1) / 2 * (end - t);
        t = end;
        w = w1;
        if (end == kill) break;
        if (end == hit && hit < next) continue;
      } else {
        if (next >= kill) break;
        t = next;
      }
      w += sample_law(*cpp.law, rng);
      next = t + rng.exponential(cpp.lambda);
    }
    vals[0] = std::exp(-alpha * area);
  };
  auto out = reduce_replications(config, 1, f);
  out[0].label = "E exp(-alpha Abar(T_beta))";
  return out[0];
}

SimEstimate simulate_cost_covariance(const SimConfig& config, unsigned k, double x1, double x2, double mean1,
                                     double mean2) {
  if (x1 < 0 || x1 > x2) throw ArgumentOrder("covariance run needs 0 <= x1 <= x2");
  const Cpp cpp = exact_cpp(config.model);
  Functional fn{true, {}, {}};
  fn.f.c.assign(k + 1, 0.0);
  fn.f.c[k] = 1;
  fn.antiderivative.c.assign(k + 2, 0.0);
  fn.antiderivative.c[k + 1] = 1.0 / (k + 1);

  auto f = [&](std::uint64_t r, std::vector<double>& vals) {
    ReplicationRng rng(config.seed, r);
    double w1 = x1, w2 = x2;
    double a1 = 0, a2 = 0;
    bool alive1 = w1 > 0;
    while (w2 > 0) {
      const double hit2 = w2 / cpp.speed;
      const double e = cpp.lambda > 0 ? rng.exponential(cpp.lambda) : std::numeric_limits<double>::infinity();
      const double s = std::min(e, hit2);
      if (alive1) {
        const double hit1 = w1 / cpp.speed;
        if (hit1 <= s) {
          a1 += segment_area(fn, w1, 0.0, cpp.speed);
          alive1 = false;
        } else {
          a1 += segment_area(fn, w1, w1 - cpp.speed * s, cpp.speed);
          w1 -= cpp.speed * s;
        }
      }
      if (e >= hit2) {
        a2 += segment_area(fn, w2, 0.0, cpp.speed);
        break;
      }
      a2 += segment_area(fn, w2, w2 - cpp.speed * e, cpp.speed);
      const double y = sample_law(*cpp.law, rng);
      w2 += y - cpp.speed * e;
      if (alive1) w1 += y;
    }
    vals[0] = (a1 - mean1) * (a2 - mean2);
  };
  auto out = reduce_replications(config, 1, f);
  out[0].label = "Cov(A_k(x1), A_k(x2))";
  return out[0];
}

}  // namespace levymom
