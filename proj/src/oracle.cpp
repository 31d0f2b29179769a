#include "levent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "levent/error.hpp"

namespace levent {

namespace {

std::mt19937_64 trajectory_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double drift_norm_bound(const DriftModel& m) {
  double b = m.constant().norm();
  for (const auto& h : m.harmonics()) b += std::numbers::sqrt2 * (h.cosine.norm() + h.sine.norm());
  return b;
}

double period_of(const DriftModel& m) { return 2 * std::numbers::pi / m.base_frequency(); }

Matrix lyapunov_rhs(const Matrix& a, const Matrix& v, const Matrix* n) {
  Matrix r = a * v + v * a.transpose();
  if (n) r += *n;
  return r;
}

Matrix rk4_step(const DriftModel& m, double t, double h, const Matrix& v, const Matrix* n) {
  const Matrix a0 = m.at(t);
  const Matrix ah = m.is_time_independent() ? a0 : m.at(t + h / 2);
  const Matrix a1 = m.is_time_independent() ? a0 : m.at(t + h);
  const Matrix k1 = lyapunov_rhs(a0, v, n);
  const Matrix k2 = lyapunov_rhs(ah, v + h / 2 * k1, n);
  const Matrix k3 = lyapunov_rhs(ah, v + h / 2 * k2, n);
  const Matrix k4 = lyapunov_rhs(a1, v + h * k3, n);
  return v + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

// One period on a uniform grid; optionally collects the mean of the states
// visited at the grid points t_0 .. t_{S-1}.
Matrix propagate_period(const DriftModel& m, const Matrix& v0, const Matrix* n, int steps, Matrix* mean = nullptr) {
  const double h = period_of(m) / steps;
  Matrix v = v0;
  if (mean) *mean = Matrix::Zero(v.rows(), v.cols());
  for (int s = 0; s < steps; ++s) {
    if (mean) *mean += v;
    v = rk4_step(m, s * h, h, v, n);
  }
  if (mean) *mean /= steps;
  return v;
}

void check_model_noise(const DriftModel& m, const DiffusionMatrix& n) {
  if (n.dimension() != m.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "diffusion dimension does not match drift");
  }
}

}  // namespace

double max_ode_step(const DriftModel& m) {
  double rate = drift_norm_bound(m);
  if (!m.is_time_independent()) rate = std::max(rate, m.base_frequency() * m.max_order());
  if (rate <= 0) return std::numeric_limits<double>::infinity();
  return 0.01 * 2 * std::numbers::pi / rate;
}

LyapunovTrajectory integrate_lyapunov_ode(const DriftModel& m, const DiffusionMatrix& n, const CovarianceMatrix& v0,
                                          double t_end, double dt) {
  check_model_noise(m, n);
  if (v0.dimension() != m.dimension()) throw Error(ErrorCode::DimensionMismatch, "V0 dimension does not match drift");
  if (!(t_end > 0) || !(dt > 0)) throw Error(ErrorCode::InvalidArgument, "t_end and dt must be positive");
  if (dt > max_ode_step(m) * (1 + 1e-12)) {
    throw Error(ErrorCode::StepSize, "dt = " + std::to_string(dt) + " exceeds the admissible step " +
                                         std::to_string(max_ode_step(m)));
  }
  const Matrix nm = n.matrix();
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  const double limit = 1e6 * std::max({v0.matrix().norm(), nm.norm() * t_end, 1.0});

  long long window = 0;
  if (!m.is_time_independent()) {
    window = std::min(steps, std::max(1LL, std::llround(period_of(m) / h)));
  }
  LyapunovTrajectory out;
  Matrix v = v0.matrix();
  for (long long s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * h;
    if (s >= steps - window) {
      out.period_times.push_back(t);
      out.period_samples.push_back(v);
    }
    v = rk4_step(m, t, h, v, &nm);
    if (!v.allFinite() || v.norm() > limit) {
      const double growth = std::log(std::max(v.norm(), limit) / std::max(v0.matrix().norm(), 1.0));
      throw UnstableError("Lyapunov ODE diverged at t = " + std::to_string(t + h), growth / (2 * (t + h)));
    }
  }
  out.final_state = v;
  if (out.period_samples.empty()) {
    out.dc_component = v;
  } else {
    out.dc_component = Matrix::Zero(v.rows(), v.cols());
    for (const auto& s : out.period_samples) out.dc_component += s;
    out.dc_component /= static_cast<double>(out.period_samples.size());
  }
  return out;
}

PeriodicSteadyState periodic_steady_state(const DriftModel& m, const DiffusionMatrix& n, int steps_per_period) {
  check_model_noise(m, n);
  if (m.is_time_independent()) {
    throw Error(ErrorCode::DegenerateInput, "shooting needs a periodic drift");
  }
  if (steps_per_period < 1) throw Error(ErrorCode::InvalidArgument, "steps_per_period must be >= 1");
  const double period = period_of(m);
  const int needed = static_cast<int>(std::ceil(period / max_ode_step(m) - 1e-9));
  const int steps = std::max(steps_per_period, needed);

  const Eigen::Index d = static_cast<Eigen::Index>(m.dimension());
  const Matrix nm = n.matrix();
  const Matrix q = propagate_period(m, Matrix::Zero(d, d), &nm, steps);

  Matrix lmap(d * d, d * d);
  for (Eigen::Index c = 0; c < d * d; ++c) {
    Matrix e = Matrix::Zero(d, d);
    e(c % d, c / d) = 1;
    const Matrix img = propagate_period(m, e, nullptr, steps);
    lmap.col(c) = img.reshaped();
  }
  const Matrix lhs = Matrix::Identity(d * d, d * d) - lmap;
  const Vector fixed = lhs.fullPivLu().solve(q.reshaped());
  Matrix v0 = fixed.reshaped(d, d);
  v0 = 0.5 * (v0 + v0.transpose());

  PeriodicSteadyState out;
  out.initial = v0;
  out.steps_per_period = steps;
  propagate_period(m, v0, &nm, steps, &out.dc_component);
  out.dc_component = 0.5 * (out.dc_component + out.dc_component.transpose());
  return out;
}

MonteCarloResult monte_carlo_covariance(const DriftModel& m, const DiffusionMatrix& n, std::size_t n_traj,
                                        double t_end, double dt, std::uint64_t seed, unsigned threads) {
  check_model_noise(m, n);
  if (n_traj < 1000) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least 1000 trajectories");
  if (!(t_end > 0) || !(dt > 0)) throw Error(ErrorCode::InvalidArgument, "t_end and dt must be positive");
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  const Eigen::Index d = static_cast<Eigen::Index>(m.dimension());
  // <dW dW^T> = (N/2) dt in the vacuum-normalized convention.
  const Vector noise_scale = (n.diagonal() * (h / 2)).cwiseSqrt();

  const bool constant = m.is_time_independent();

  Matrix finals(d, static_cast<Eigen::Index>(n_traj));
  auto run = [&](std::size_t first, std::size_t last) {
    std::normal_distribution<double> normal;
    Vector r(d), z(d);
    Matrix a = m.constant();
    for (std::size_t tr = first; tr < last; ++tr) {
      auto eng = trajectory_engine(seed, tr);
      r.setZero();
      for (long long s = 0; s < steps; ++s) {
        for (Eigen::Index i = 0; i < d; ++i) z(i) = normal(eng);
        if (!constant) a = m.at(static_cast<double>(s) * h);
        r += h * (a * r) + noise_scale.cwiseProduct(z);
      }
      finals.col(static_cast<Eigen::Index>(tr)) = r;
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_traj)));
  if (workers == 1) {
    run(0, n_traj);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_traj + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t a = w * chunk, b = std::min(n_traj, a + chunk);
      if (a < b) pool.emplace_back(run, a, b);
    }
    for (auto& t : pool) t.join();
  }

  // Fixed-order reduction over the stored final states.
  const double nt = static_cast<double>(n_traj);
  const Vector mean = finals.rowwise().mean();
  const Matrix centred = finals.colwise() - mean;
  MonteCarloResult out;
  out.trajectories = n_traj;
  out.covariance = 2 * centred * centred.transpose() / (nt - 1);
  out.standard_error = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::ArrayXd prod = 2 * centred.row(i).array() * centred.row(j).array();
      const double var = (prod - prod.mean()).square().sum() / (nt - 1);
      out.standard_error(i, j) = std::sqrt(var / nt);
    }
  }
  return out;
}

MomentEstimate sample_fourth_moments(const CovarianceMatrix& v, std::size_t i, std::size_t j, std::size_t k,
                                     std::size_t l, std::size_t n_samples, std::uint64_t seed) {
  MomentEstimate est;
  est.closed_form = gaussian_fourth_moment(v, i, j, k, l);
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  Eigen::LLT<Matrix> llt(v.matrix() / 2);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::InvalidState, "covariance is not positive definite");
  const Matrix lower = llt.matrixL();
  auto eng = trajectory_engine(seed, 0);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(v.dimension());
  Vector z(d);
  double sum = 0, sumsq = 0;
  const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j), K = static_cast<Eigen::Index>(k),
             L = static_cast<Eigen::Index>(l);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (Eigen::Index a = 0; a < d; ++a) z(a) = normal(eng);
    const Vector r = lower * z;
    const double x = 8 * r(I) * r(J) * r(K) * r(L);
    sum += x;
    sumsq += x * x;
  }
  const double ns = static_cast<double>(n_samples);
  est.mean = sum / ns;
  const double var = std::max(0.0, (sumsq - ns * est.mean * est.mean) / (ns - 1));
  est.standard_error = std::sqrt(var / ns);
  return est;
}

}  // namespace levent
