#include "levent/floquet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "levent/error.hpp"
#include "levent/lyapunov.hpp"

namespace levent {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kEdgeWeight = 0.5;

enum class Trig { Cos, Sin };

class Assembler {
 public:
  Assembler(FloquetSystem& f) : f_(f), d_(static_cast<Eigen::Index>(f.base_dim)) {}

  auto block(std::size_t row, std::size_t col) {
    return f_.drift.block(static_cast<Eigen::Index>(row) * d_, static_cast<Eigen::Index>(col) * d_, d_, d_);
  }

  // Adds coef * M * trig(freq * w t), a product term sourced by sector `src`,
  // projected onto the sector basis {1, sqrt2 cos, sqrt2 sin}.
  void add(Trig kind, int freq, double coef, const Matrix& m, std::size_t src) {
    if (kind == Trig::Sin) {
      if (freq == 0) return;
      if (freq < 0) {
        freq = -freq;
        coef = -coef;
      }
      if (freq > f_.truncation) return;
      block(FloquetSystem::sine_block(freq), src) += coef * kInvSqrt2 * m;
      return;
    }
    freq = std::abs(freq);
    if (freq > f_.truncation) return;
    if (freq == 0) {
      block(0, src) += coef * m;
    } else {
      block(FloquetSystem::cosine_block(freq), src) += coef * kInvSqrt2 * m;
    }
  }

 private:
  FloquetSystem& f_;
  Eigen::Index d_;
};

}  // namespace

FloquetSystem assemble_floquet_drift(const DriftModel& m, int truncation) {
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "Floquet truncation must be >= 1");
  if (m.is_time_independent()) {
    throw Error(ErrorCode::DegenerateInput, "drift has no harmonics; use the constant-drift solver");
  }
  FloquetSystem f;
  f.base_dim = m.dimension();
  f.truncation = truncation;
  f.base_frequency = m.base_frequency();
  const auto dim = static_cast<Eigen::Index>(f.dimension());
  f.drift = Matrix::Zero(dim, dim);

  const auto d = static_cast<Eigen::Index>(f.base_dim);
  const Matrix eye = Matrix::Identity(d, d);
  Assembler as(f);
  for (std::size_t b = 0; b < f.sectors(); ++b) as.block(b, b) += m.constant();
  for (int k = 1; k <= truncation; ++k) {
    const auto c = FloquetSystem::cosine_block(k);
    const auto s = FloquetSystem::sine_block(k);
    as.block(c, s) -= k * f.base_frequency * eye;
    as.block(s, c) += k * f.base_frequency * eye;
  }

  for (const Harmonic& h : m.harmonics()) {
    const int n = h.order;
    const Matrix& ac = h.cosine;
    const Matrix& asn = h.sine;
    if (n <= truncation) {
      as.block(FloquetSystem::cosine_block(n), 0) += ac;
      as.block(FloquetSystem::sine_block(n), 0) += asn;
    }
    // 2 cos(a) cos(b) = cos(a - b) + cos(a + b), and so on.
    for (int k = 1; k <= truncation; ++k) {
      const auto c = FloquetSystem::cosine_block(k);
      const auto s = FloquetSystem::sine_block(k);
      as.add(Trig::Cos, n - k, 1, ac, c);
      as.add(Trig::Cos, n + k, 1, ac, c);
      as.add(Trig::Sin, k + n, 1, ac, s);
      as.add(Trig::Sin, k - n, 1, ac, s);
      as.add(Trig::Sin, n + k, 1, asn, c);
      as.add(Trig::Sin, n - k, 1, asn, c);
      as.add(Trig::Cos, n - k, 1, asn, s);
      as.add(Trig::Cos, n + k, -1, asn, s);
    }
  }
  return f;
}

void embed_diffusion(FloquetSystem& f, const DiffusionMatrix& n) {
  if (n.dimension() != f.base_dim) {
    throw Error(ErrorCode::DimensionMismatch, "diffusion dimension does not match drift");
  }
  const auto dim = static_cast<Eigen::Index>(f.dimension());
  const auto d = static_cast<Eigen::Index>(f.base_dim);
  f.diffusion = Matrix::Zero(dim, dim);
  const Matrix nb = n.matrix();
  for (std::size_t b = 0; b < f.sectors(); ++b) {
    f.diffusion.block(static_cast<Eigen::Index>(b) * d, static_cast<Eigen::Index>(b) * d, d, d) = nb;
  }
}

namespace {

struct Spectrum {
  double filtered = -std::numeric_limits<double>::infinity();
  double raw = -std::numeric_limits<double>::infinity();
};

Spectrum floquet_spectrum(const FloquetSystem& f) {
  Eigen::ComplexEigenSolver<Matrix> es(f.drift, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidState, "eigenvalue solver did not converge on the Floquet drift");
  }
  const auto d = static_cast<Eigen::Index>(f.base_dim);
  const Eigen::Index edge_start = static_cast<Eigen::Index>(FloquetSystem::cosine_block(f.truncation)) * d;
  const Eigen::Index edge_len = 2 * d;
  Spectrum s;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double re = es.eigenvalues()(i).real();
    s.raw = std::max(s.raw, re);
    const auto v = es.eigenvectors().col(i);
    const double total = v.squaredNorm();
    const double edge = v.segment(edge_start, edge_len).squaredNorm();
    if (total > 0 && edge / total >= kEdgeWeight) continue;
    s.filtered = std::max(s.filtered, re);
  }
  return s;
}

StabilityReport report_from(const Spectrum& s, const FloquetSystem& f) {
  StabilityReport r;
  r.spectral_abscissa = s.filtered;
  r.stable = is_hurwitz(s.filtered, f.drift.norm());
  return r;
}

}  // namespace

StabilityReport floquet_stability(const FloquetSystem& f) { return report_from(floquet_spectrum(f), f); }

FloquetSolution solve_floquet_steady_state(const DriftModel& m, const DiffusionMatrix& n, int truncation) {
  FloquetSystem f = assemble_floquet_drift(m, truncation);
  embed_diffusion(f, n);
  const Spectrum spec = floquet_spectrum(f);
  const StabilityReport stab = report_from(spec, f);
  if (!stab.stable) {
    throw UnstableError("periodic drift is not stable (Floquet exponent with non-negative real part)",
                        stab.spectral_abscissa);
  }
  const Matrix vf = solve_lyapunov(f.drift, f.diffusion);
  const Residual r = residual(f.drift, vf, f.diffusion);
  const auto d = static_cast<Eigen::Index>(f.base_dim);
  // Only the DC block has to be a covariance; the harmonic sectors need not be definite.
  const Matrix dc = vf.topLeftCorner(d, d);
  if (!certified_steady_state(dc, r)) {
    throw UnstableError("periodic steady-state solve not certified (relative residual " + std::to_string(r.relative) +
                            ")",
                        stab.spectral_abscissa);
  }
  return FloquetSolution{CovarianceMatrix(m.basis(), dc), truncation, r.relative, stab,
                         spec.raw};
}

std::span<const int> default_truncation_ladder() {
  static constexpr std::array<int, 12> ladder{1, 2, 3, 4, 5, 6, 8, 10, 12, 14, 16, 20};
  return ladder;
}

ConvergenceReport convergence_scan(const DriftModel& m, const DiffusionMatrix& n, std::span<const int> k_list,
                                   double threshold) {
  if (k_list.empty()) throw Error(ErrorCode::InvalidArgument, "truncation list is empty");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1) throw Error(ErrorCode::InvalidArgument, "truncation orders must be >= 1");
    if (i > 0 && k_list[i] <= k_list[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "truncation orders must be strictly increasing");
    }
  }
  ConvergenceReport rep;
  for (int k : k_list) {
    ConvergenceRow row;
    row.truncation = k;
    row.dc_block = solve_floquet_steady_state(m, n, k).dc_block.matrix();
    if (!rep.rows.empty()) {
      auto& prev = rep.rows.back();
      const double scale = std::max(prev.dc_block.norm(), std::numeric_limits<double>::min());
      prev.successive_difference = (row.dc_block - prev.dc_block).norm() / scale;
    }
    rep.rows.push_back(std::move(row));
  }
  bool converged = false;
  for (const auto& row : rep.rows) {
    if (!row.successive_difference) continue;
    const bool below = *row.successive_difference < threshold;
    if (below && !converged) {
      converged = true;
      rep.production_truncation = row.truncation;
    } else if (!below && converged) {
      rep.non_monotone_tail = true;
    }
  }
  return rep;
}

}  // namespace levent
