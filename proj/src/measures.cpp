#include "levent/measures.hpp"

#include <algorithm>
#include <cmath>

#include "levent/error.hpp"

namespace levent {

namespace {

void require_two_mode(const CovarianceMatrix& v) {
  if (v.mode_count() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "two-mode measure needs a 4x4 covariance block");
  }
}

void require_physical(const CovarianceMatrix& v) {
  if (!is_physical(v, kMeasureTolerance)) {
    throw Error(ErrorCode::InvalidState, "covariance violates the uncertainty principle");
  }
}

}  // namespace

double min_pt_symplectic_eigenvalue(const CovarianceMatrix& v) {
  require_two_mode(v);
  require_physical(v);
  return symplectic_eigenvalues(partial_transpose(v, 1)).front();
}

double log_negativity(const CovarianceMatrix& v) {
  return std::max(0.0, -std::log(min_pt_symplectic_eigenvalue(v)));
}

double epr_variance(const CovarianceMatrix& v) {
  require_two_mode(v);
  require_physical(v);
  return 0.25 * (v(0, 0) + v(2, 2) + 2 * v(0, 2) + v(1, 1) + v(3, 3) - 2 * v(1, 3));
}

std::pair<double, double> mean_phonons(const CovarianceMatrix& v) {
  require_two_mode(v);
  return {(v(0, 0) + v(1, 1) - 2) / 4, (v(2, 2) + v(3, 3) - 2) / 4};
}

std::optional<double> nrf(const CovarianceMatrix& v) {
  require_two_mode(v);
  require_physical(v);
  const auto [n1, n2] = mean_phonons(v);
  const double den = n1 + n2;
  if (den < 1e-12) return std::nullopt;
  auto sq = [&](int i, int j) { return v(i, j) * v(i, j); };
  const double diag = sq(0, 0) + sq(1, 1) + sq(2, 2) + sq(3, 3);
  const double cross = sq(0, 1) + sq(2, 3) - sq(0, 2) - sq(0, 3) - sq(1, 2) - sq(1, 3);
  return (diag / 8 + cross / 4 - 0.5) / den;
}

EntanglementReport full_report(const CovarianceMatrix& v_joint, std::array<std::size_t, 2> mech_modes, bool stable) {
  EntanglementReport r;
  r.stable = stable;
  if (!stable) return r;
  const CovarianceMatrix v = marginal(v_joint, mech_modes);
  require_physical(v);
  r.min_pt_symplectic = symplectic_eigenvalues(partial_transpose(v, 1)).front();
  r.log_negativity = std::max(0.0, -std::log(*r.min_pt_symplectic));
  r.epr_variance = epr_variance(v);
  r.nrf = nrf(v);
  r.purity = purity(v);
  r.mean_phonons = mean_phonons(v);
  return r;
}

}  // namespace levent
