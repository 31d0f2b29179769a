#include "levent/feasibility.hpp"

#include <cmath>
#include <numbers>

#include "levent/error.hpp"

namespace levent {

namespace {
void require_positive(double x, const char* what) {
  if (!(x > 0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
}
}  // namespace

double thermal_occupancy(double temperature_k, double omega) {
  require_positive(temperature_k, "temperature");
  require_positive(omega, "mechanical frequency");
  return constants::boltzmann * temperature_k / (constants::hbar * omega);
}

double phase_noise_heating(double g, double n_phot, double kappa, double s_phidot) {
  require_positive(kappa, "kappa");
  if (!(g >= 0) || !(n_phot >= 0) || !(s_phidot >= 0)) {
    throw Error(ErrorCode::InvalidArgument, "g, photon number and noise density must be nonnegative");
  }
  return 4 * g * g * n_phot * s_phidot / (kappa * kappa);
}

double tweezer_intensity(double power_w, double waist_m) {
  require_positive(power_w, "power");
  require_positive(waist_m, "waist");
  return 2 * power_w / (std::numbers::pi * waist_m * waist_m) / 1e4;
}

}  // namespace levent
