#pragma once

// Back-of-envelope experimental estimates.

namespace levent {

namespace constants {
inline constexpr double boltzmann = 1.380649e-23;       // J/K, exact
inline constexpr double hbar = 1.054571817e-34;         // J s
}  // namespace constants

/// k_B T / (hbar omega), omega in rad/s.
double thermal_occupancy(double temperature_k, double omega);

/// 4 g^2 n_phot S / kappa^2 with g, kappa in rad/s and S in Hz^2/Hz. The
/// result carries the units of S (Hz). S == 0 is allowed.
double phase_noise_heating(double g, double n_phot, double kappa, double s_phidot);

/// Peak intensity 2 P / (pi w^2) of a Gaussian beam, in W/cm^2.
double tweezer_intensity(double power_w, double waist_m);

}  // namespace levent
