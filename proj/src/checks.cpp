#include "levent/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "levent/floquet.hpp"
#include "levent/lyapunov.hpp"
#include "levent/oracle.hpp"

namespace levent {

namespace {
std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
}  // namespace

SystemParams desk_params() {
  SystemParams p;
  p.lambda1 = 1;
  p.lambda2 = 0.5;
  p.kappa1 = 1.2;
  p.kappa2 = 1.2;
  p.n1 = p.n2 = 1;
  p.set_frequencies(3, 3);
  p.set_quality_factors(15, 15);
  return p;
}

CheckResult check_floquet_against_shooting(ModelVariant variant, const SystemParams& p, int truncation,
                                           int steps_per_period) {
  CheckResult r;
  r.name = "floquet-vs-shooting";
  r.tolerance = 1e-3;
  const DriftModel m = build_drift(variant, p);
  const DiffusionMatrix n = build_diffusion(variant, p);
  const FloquetSolution fs = solve_floquet_steady_state(m, n, truncation);
  const PeriodicSteadyState ps = periodic_steady_state(m, n, steps_per_period);
  const Matrix& vf = fs.dc_block.matrix();
  r.deviation = (vf - ps.dc_component).norm() / vf.norm();
  r.passed = r.deviation < r.tolerance;
  r.detail = fmt("relative Frobenius difference %.3g at K = %g", r.deviation, truncation) +
             fmt(", %g RK4 steps per period", ps.steps_per_period);
  return r;
}

CheckResult check_monte_carlo(std::size_t n_traj, std::uint64_t seed, unsigned threads, double t_end, double dt) {
  CheckResult r;
  r.name = "monte-carlo-vs-lyapunov";
  r.tolerance = 3;
  const SystemParams p = desk_params();
  const DriftModel m = build_drift(ModelVariant::CsOnlyRwa, p);
  const DiffusionMatrix n = build_diffusion(ModelVariant::CsOnlyRwa, p);
  const Matrix exact = solve_steady_state(m, n).covariance.matrix();
  const MonteCarloResult mc = monte_carlo_covariance(m, n, n_traj, t_end, dt, seed, threads);
  for (Eigen::Index i = 0; i < exact.rows(); ++i) {
    for (Eigen::Index j = 0; j < exact.cols(); ++j) {
      const double z = std::abs(mc.covariance(i, j) - exact(i, j)) / mc.standard_error(i, j);
      r.deviation = std::max(r.deviation, z);
    }
  }
  r.passed = r.deviation < r.tolerance;
  r.detail = fmt("largest entry deviation %.3g standard errors over %g trajectories", r.deviation,
                 static_cast<double>(n_traj));
  return r;
}

CheckResult check_fourth_moments(std::size_t n_cases, std::size_t n_samples, std::uint64_t seed) {
  CheckResult r;
  r.name = "fourth-moments";
  r.tolerance = 3;
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  const QuadratureBasis basis = QuadratureBasis::generic(2);
  for (std::size_t c = 0; c < n_cases; ++c) {
    // Any V >= I is a physical state.
    Matrix g(4, 4);
    for (Eigen::Index i = 0; i < 16; ++i) g(i) = normal(eng);
    const CovarianceMatrix v(basis, Matrix::Identity(4, 4) + g * g.transpose());
    const std::size_t i = pick(eng), j = pick(eng), k = pick(eng), l = pick(eng);
    const MomentEstimate est = sample_fourth_moments(v, i, j, k, l, n_samples, eng());
    r.deviation = std::max(r.deviation, std::abs(est.mean - est.closed_form) / est.standard_error);
  }
  r.passed = r.deviation < r.tolerance;
  r.detail = fmt("largest deviation %.3g standard errors over %g cases", r.deviation, static_cast<double>(n_cases));
  return r;
}

}  // namespace levent
