#pragma once

// Solver-versus-oracle comparisons behind the oracle-check command.

#include <cstdint>
#include <string>

#include "levent/system_model.hpp"

namespace levent {

struct CheckResult {
  std::string name;
  double deviation = 0;   // in the unit named by `detail`
  double tolerance = 0;
  bool passed = false;
  std::string detail;
};

/// Rescaled CS-only point used for stochastic checks: lambda1 = 1, lambda2 = 0.5,
/// kappa1 = 1.2, omega = 3, Q = 15 (gamma = 0.2), n = 1.
SystemParams desk_params();

/// Floquet DC block against the shooting oracle; relative Frobenius error, tolerance 1e-3.
CheckResult check_floquet_against_shooting(ModelVariant variant, const SystemParams& p, int truncation,
                                           int steps_per_period = 400);

/// Monte Carlo covariance at desk_params against the Lyapunov solution;
/// largest per-entry deviation in standard errors, tolerance 3.
CheckResult check_monte_carlo(std::size_t n_traj, std::uint64_t seed, unsigned threads, double t_end = 40,
                              double dt = 0.005);

/// Sampled fourth moments against the Gaussian closed form on random
/// physical two-mode states; largest deviation in standard errors, tolerance 3.
CheckResult check_fourth_moments(std::size_t n_cases, std::size_t n_samples, std::uint64_t seed);

}  // namespace levent
