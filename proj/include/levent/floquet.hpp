#pragma once

// Floquet-space steady state of a periodic drift.
//
// A periodic drift A(t) = A0 + sqrt(2) sum_n [A_c^(n) cos(n w t) + A_s^(n) sin(n w t)]
// is embedded in a time-independent system on the harmonic sectors
//   block 0      : DC
//   block 2k - 1 : cos(k w t) sector
//   block 2k     : sin(k w t) sector,     k = 1..K.
// Solving the embedded Lyapunov equation with N on every diagonal block gives
// the period-averaged covariance in block (0, 0).

#include <optional>
#include <span>
#include <vector>

#include "levent/gaussian.hpp"
#include "levent/system_model.hpp"

namespace levent {

inline constexpr int kDefaultTruncation = 10;
inline constexpr double kConvergenceThreshold = 1e-6;

struct FloquetSystem {
  std::size_t base_dim = 0;
  int truncation = 0;
  double base_frequency = 0;
  Matrix drift;      // A_F, dimension base_dim * (2K + 1)
  Matrix diffusion;  // N_F = diag(N, ..., N); empty until embed_diffusion

  std::size_t sectors() const noexcept { return static_cast<std::size_t>(2 * truncation + 1); }
  std::size_t dimension() const noexcept { return base_dim * sectors(); }
  static constexpr std::size_t cosine_block(int k) { return static_cast<std::size_t>(2 * k - 1); }
  static constexpr std::size_t sine_block(int k) { return static_cast<std::size_t>(2 * k); }
};

/// Places A0 on every diagonal block, rotation blocks -k w I (cos row, sin
/// column) and +k w I (sin row, cos column), and the harmonic couplings
/// obtained from the trigonometric product identities: full weight between
/// DC and a harmonic sector, 1/sqrt(2) between two harmonic sectors. For a
/// single-harmonic model at K = 2 this is the textbook 5x5 block layout, except
/// that the (cos2, sin1) block is -A_s^(1)/sqrt(2) like every other coupling.
FloquetSystem assemble_floquet_drift(const DriftModel& m, int truncation);

void embed_diffusion(FloquetSystem& f, const DiffusionMatrix& n);

/// Stability of the embedded drift. Eigenmodes with at least half of their
/// weight in the outermost harmonic sector K are truncation artifacts (their
/// partner sectors at K + 1 are missing) and are excluded; every genuine
/// Floquet exponent also has a copy centred at low harmonics.
StabilityReport floquet_stability(const FloquetSystem& f);

struct FloquetSolution {
  CovarianceMatrix dc_block;
  int truncation = 0;
  double relative_residual = 0;  // of the embedded equation
  StabilityReport stability;     // filtered, see floquet_stability
  double raw_abscissa = 0;       // max real part over all of A_F's eigenvalues
};

/// Throws UnstableError when the filtered spectrum is not Hurwitz and
/// DegenerateInput for a constant model.
FloquetSolution solve_floquet_steady_state(const DriftModel& m, const DiffusionMatrix& n, int truncation);

struct ConvergenceRow {
  int truncation = 0;
  Matrix dc_block;
  /// ||V(K_next) - V(K)||_F / ||V(K)||_F; absent on the last row.
  std::optional<double> successive_difference;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Smallest K whose successive difference is below the threshold.
  std::optional<int> production_truncation;
  /// A later difference rose above the threshold again.
  bool non_monotone_tail = false;
};

/// K_list must be strictly increasing and >= 1.
ConvergenceReport convergence_scan(const DriftModel& m, const DiffusionMatrix& n, std::span<const int> k_list,
                                   double threshold = kConvergenceThreshold);

/// Default truncation ladder used by "auto" truncation.
std::span<const int> default_truncation_ladder();

}  // namespace levent
