#pragma once

// Entanglement and state diagnostics on a two-mode covariance block ordered
// (x1, p1, x2, p2). V is vacuum-normalized (see gaussian.hpp): every
// ordinary second moment below is V/2.

#include <array>
#include <optional>
#include <utility>

#include "levent/gaussian.hpp"

namespace levent {

/// Physicality tolerance on the smallest symplectic eigenvalue used by the
/// measures; looser than is_physical's default to absorb solver round-off on
/// hot (n ~ 1e7) states.
inline constexpr double kMeasureTolerance = 1e-6;

struct EntanglementReport {
  bool stable = false;
  std::optional<double> log_negativity;
  std::optional<double> epr_variance;
  std::optional<double> nrf;  // absent when undefined (no phonons) or unstable
  std::optional<double> purity;
  std::optional<std::pair<double, double>> mean_phonons;
  std::optional<double> min_pt_symplectic;  // smallest symplectic eigenvalue of the partial transpose
};

/// max(0, -ln nu), nu the smallest symplectic eigenvalue of V with mode 2 transposed.
double log_negativity(const CovarianceMatrix& v);
double min_pt_symplectic_eigenvalue(const CovarianceMatrix& v);

/// 1/2 [Var(x1 + x2) + Var(p1 - p2)] = 1/4 [V11 + V33 + 2 V13 + V22 + V44 - 2 V24].
double epr_variance(const CovarianceMatrix& v);

/// Variance of n1 - n2 over <n1> + <n2>, via the Gaussian moment reduction.
/// nullopt when <n1> + <n2> < 1e-12.
std::optional<double> nrf(const CovarianceMatrix& v);

/// (<n1>, <n2>) = ((V11 + V22 - 2)/4, (V33 + V44 - 2)/4).
std::pair<double, double> mean_phonons(const CovarianceMatrix& v);

/// Marginalizes v_joint onto mech_modes and fills every field. With
/// stable == false only the flag is set.
EntanglementReport full_report(const CovarianceMatrix& v_joint, std::array<std::size_t, 2> mech_modes, bool stable);

}  // namespace levent
