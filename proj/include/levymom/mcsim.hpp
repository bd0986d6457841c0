#pragma once

// Monte Carlo oracle. Compound Poisson paths are simulated exactly: between
// jumps the level moves linearly, so areas of polynomial functionals and the
// hitting time are closed-form per segment. A Brownian component is handled
// by an Euler scheme with hitting checked at grid points (biased).
//
// Each replication r draws from its own counter-based stream keyed by
// (seed, r), and replications are reduced in fixed blocks, so estimates are
// bit-identical for every thread count.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levymom/moments.hpp"

namespace levymom {

/// Philox4x32-10 (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  static Counter block(Counter ctr, Key key);
};

/// Random stream of one replication.
class ReplicationRng {
 public:
  using result_type = std::uint64_t;

  ReplicationRng(std::uint64_t seed, std::uint64_t replication);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  /// Uniform on (0, 1), 53 random bits.
  double uniform();
  double exponential(double rate);
  double normal();

 private:
  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter buf_{};
  unsigned used_ = 4;
  std::optional<double> spare_normal_;
};

/// Draws from a parametric law.
double sample_law(const ParametricLaw& law, ReplicationRng& rng);

struct SimConfig {
  SimConfig(LevyModel m, PushSpec p) : model(std::move(m)), push(std::move(p)) {}

  LevyModel model;
  PushSpec push;
  std::uint64_t replications = 100000;
  std::uint64_t seed = 20240521;
  std::vector<FunctionalSpec<Real>> functionals;
  std::optional<double> kill_rate;  // beta, reflected-area runs
  double alpha = 0;                 // reflected-area runs
  double euler_dt = 1e-3;           // only with sigma2 > 0
  bool allow_euler = false;
  unsigned threads = 1;
};

struct CycleSample {
  double tau = 0;
  std::uint64_t jumps = 0;
  std::vector<double> values;  // one per configured functional
};

struct SimEstimate {
  std::string label;
  double mean = 0;
  double stderr_ = 0;
  double ci_low = 0;   // 95%
  double ci_high = 0;  // 95%
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;

  /// |mean - target| <= k * stderr + slack.
  bool covers(double target, double k = 3.5, double slack = 0) const;
};

/// One busy cycle started at V; replication index selects the stream.
CycleSample simulate_busy_cycle(const SimConfig& config, std::uint64_t replication);

/// A product tau^t N^n prod_i F_i^{e_i} over the configured functionals.
struct SampleMonomial {
  unsigned tau = 0;
  unsigned jumps = 0;
  std::vector<unsigned> functionals;
  std::string label;
};

std::vector<SimEstimate> estimate_moments(const SimConfig& config, const std::vector<SampleMonomial>& monomials);

/// E exp(-alpha * integral_0^{T_beta} Wbar_V(t) dt) for the reflected workload.
SimEstimate simulate_reflected_area(const SimConfig& config);

/// Cov(A_k(x1), A_k(x2)) from paths driven by one input, centred with the
/// supplied means E A_k(x1), E A_k(x2).
SimEstimate simulate_cost_covariance(const SimConfig& config, unsigned k, double x1, double x2, double mean1,
                                     double mean2);

/// Generic reducer: mean and standard error of f(r) over r < R, with f
/// returning one value per output. Deterministic for any thread count.
std::vector<SimEstimate> reduce_replications(const SimConfig& config, std::size_t outputs,
                                             const std::function<void(std::uint64_t, std::vector<double>&)>& f);

}  // namespace levymom
