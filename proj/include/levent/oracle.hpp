#pragma once

// Independent engines used to cross-check the steady-state solvers:
// direct RK4 integration of dV/dt = A(t) V + V A(t)^T + N, a shooting solver
// for the periodic steady state, and Euler-Maruyama trajectories of
// dr = A(t) r dt + dW.
//
// Random numbers: std::mt19937_64, one engine per trajectory seeded with
// std::seed_seq{seed_lo32, seed_hi32, trajectory_index}; normal variates from
// std::normal_distribution<double>.

#include <cstdint>
#include <vector>

#include "levent/gaussian.hpp"
#include "levent/system_model.hpp"

namespace levent {

struct LyapunovTrajectory {
  Matrix final_state;
  /// Periodic models: states sampled over the last period (uniform grid, the
  /// endpoint excluded) and their mean, which is the DC Fourier component
  /// when the step divides the period.
  /// Constant models: empty samples and dc_component == final_state.
  std::vector<double> period_times;
  std::vector<Matrix> period_samples;
  Matrix dc_component;
};

/// Largest admissible RK4 step: 0.01 * 2 pi / max(base * K, bound on ||A(t)||).
double max_ode_step(const DriftModel& m);

/// Throws StepSize when dt exceeds max_ode_step, UnstableError when ||V||
/// grows past 1e6 * max(||V0||, ||N|| t_end, 1).
LyapunovTrajectory integrate_lyapunov_ode(const DriftModel& m, const DiffusionMatrix& n, const CovarianceMatrix& v0,
                                          double t_end, double dt);

struct PeriodicSteadyState {
  Matrix initial;       // V(0) on the periodic orbit
  Matrix dc_component;  // period average
  int steps_per_period = 0;
};

/// Shooting: the one-period map V -> L V + Q is affine, so the periodic orbit
/// solves (I - L) v = Q. L is built column by column from basis matrices.
/// steps_per_period is raised if needed to satisfy max_ode_step.
PeriodicSteadyState periodic_steady_state(const DriftModel& m, const DiffusionMatrix& n, int steps_per_period = 400);

struct MonteCarloResult {
  Matrix covariance;       // 2 Cov(r) at t_end
  Matrix standard_error;   // per entry
  std::size_t trajectories = 0;
};

/// n_traj >= 1000. Output depends only on the arguments, never on threads.
MonteCarloResult monte_carlo_covariance(const DriftModel& m, const DiffusionMatrix& n, std::size_t n_traj,
                                        double t_end, double dt, std::uint64_t seed, unsigned threads = 1);

struct MomentEstimate {
  double mean = 0;
  double standard_error = 0;
  double closed_form = 0;  // gaussian_fourth_moment
};

/// Samples r ~ N(0, V/2) and averages 8 r_i r_j r_k r_l, the normalization
/// under which the Gaussian closed form reads 2 (V_ij V_kl + V_ik V_jl + V_il V_jk).
MomentEstimate sample_fourth_moments(const CovarianceMatrix& v, std::size_t i, std::size_t j, std::size_t k,
                                     std::size_t l, std::size_t n_samples, std::uint64_t seed);

}  // namespace levent
