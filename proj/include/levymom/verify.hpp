#pragma once

// Analytic-versus-oracle checks shared by `levymom verify` and the acceptance
// suite. Every check is self-contained and reports what it compared.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levymom/model.hpp"

namespace levymom {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // 0 = none
};

struct VerifyOptions {
  std::uint64_t replications = 1000000;
  std::uint64_t seed = 20240521;
  unsigned threads = 1;
};

/// c = -1, sigma2 = 0, lambda = 1/2, Exp(1) jumps, V ~ Exp(1).
LevyModel reference_mg1();
/// c = -1, sigma2 = 0, lambda = 1/3, Gamma(shape 2, rate 2) jumps.
LevyModel gamma_mg1();
/// c = -1, sigma2 = 2, no jumps.
LevyModel brownian_model();

CheckResult check_iglehart();
CheckResult check_cohen();
CheckResult check_joint_area_tau();
CheckResult check_brownian_takacs();
CheckResult check_series_oracle();
CheckResult check_theta();
CheckResult check_ode_recursion();
CheckResult check_mc_concordance(const VerifyOptions& options);
CheckResult check_transform(const VerifyOptions& options);
CheckResult check_properties(const VerifyOptions& options);

std::vector<CheckResult> run_all_checks(const VerifyOptions& options);

/// Runs fn, catching library errors into a failed result, and records the time.
/// A positive time_limit fails the check when exceeded.
CheckResult timed_check(const std::string& id, const std::string& name, double time_limit,
                        const std::function<void(CheckResult&)>& fn);

}  // namespace levymom
