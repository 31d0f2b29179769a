#pragma once

// Single points, 1-D sweeps and figure presets.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levent/config.hpp"
#include "levent/measures.hpp"
#include "levent/system_model.hpp"

namespace levent {

struct PointResult {
  EntanglementReport report;
  int k_used = 0;          // Floquet truncation, 0 for constant models
  double residual = 0;     // relative Lyapunov residual
  std::string error;       // empty on success; "unstable" for non-Hurwitz points
  bool failed = false;     // error other than instability
};

struct SolvedPoint {
  CovarianceMatrix covariance;  // joint state, period-averaged for periodic drift
  int k_used = 0;
  double residual = 0;
  bool converged = true;  // automatic truncation reached the threshold
};

/// truncation: fixed K, or nullopt for the automatic convergence ladder.
/// Throws on any failure, UnstableError for non-Hurwitz drift.
SolvedPoint solve_point(ModelVariant variant, const SystemParams& p, std::optional<int> truncation = std::nullopt);

/// solve_point followed by full_report; errors are captured in the result.
PointResult run_point(ModelVariant variant, const SystemParams& p, std::optional<int> truncation = std::nullopt);

/// Swept parameter names:
///   lambda2_ratio  lambda2 = value * lambda1
///   g2_ratio       g2 = value * g1
///   delta12_khz    omega2 = omega1 - value (detuned variants only)
///   q, n           both particles
///   any other ParameterSet key, set verbatim.
struct SweepSpec {
  ModelVariant variant = ModelVariant::FullRwa;
  std::string parameter = "lambda2_ratio";
  std::vector<double> grid;
  ParameterSet fixed;
  std::optional<int> truncation;
  std::string series;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Throws Error(Config) on an empty or non-monotone grid, unknown
  /// parameter or variant/parameter mismatch.
  void validate() const;
};

struct SweepRow {
  std::string series;
  std::string parameter;
  double value = 0;
  PointResult result;
};

/// Applies one swept value to a parameter set.
void apply_sweep_value(ParameterSet& ps, const std::string& parameter, double value);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);
/// Several series share one worker pool; rows keep spec order, then grid order.
std::vector<SweepRow> run_sweeps(const std::vector<SweepSpec>& specs, unsigned threads = 0);

std::vector<std::string> preset_names();
/// Throws Error(Config) for an unknown name.
std::vector<SweepSpec> preset_specs(const std::string& name);

/// 101 points on [0.01, 0.99].
std::vector<double> default_ratio_grid();
std::vector<double> linear_grid(double lo, double hi, std::size_t n);
std::vector<double> log_grid(double lo, double hi, std::size_t n);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Reads the columns write_csv produces; throws Error(Io) when malformed.
std::vector<SweepRow> read_csv(std::istream& in);

std::size_t failed_rows(const std::vector<SweepRow>& rows);

}  // namespace levent
