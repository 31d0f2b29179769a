#pragma once

// Drift and diffusion matrices for two levitated particles coupled to one
// (coherent scattering) or two (coherent scattering + dispersive) cavity modes.
// All rates are angular frequencies in rad/s.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "levent/gaussian.hpp"

namespace levent {

struct SystemParams {
  double lambda1 = 0;  // coherent-scattering coupling, particle 1 (beam splitter)
  double lambda2 = 0;  // coherent-scattering coupling, particle 2 (two-mode squeezing)
  double g1 = 0;       // dispersive coupling to the second cavity mode
  double g2 = 0;
  double kappa1 = 0;   // cavity decay rates, entering the drift as kappa/2
  double kappa2 = 0;
  double gamma1 = 0;   // mechanical damping
  double gamma2 = 0;
  double n1 = 0;       // thermal occupations
  double n2 = 0;
  double omega1 = 1;   // mechanical frequencies
  double omega2 = 1;
  double delta12 = 0;  // omega1 - omega2, kept in sync by set_frequencies()

  double q1() const { return omega1 / gamma1; }
  double q2() const { return omega2 / gamma2; }

  void set_frequencies(double w1, double w2) {
    omega1 = w1;
    omega2 = w2;
    delta12 = w1 - w2;
  }
  /// gamma_j = omega_j / Q_j.
  void set_quality_factors(double q1, double q2) {
    gamma1 = omega1 / q1;
    gamma2 = omega2 / q2;
  }

  /// Throws InvalidArgument on negative rates, non-positive frequencies or a
  /// delta12 that disagrees with omega1 - omega2 beyond 1e-9 relative.
  void validate() const;
};

enum class ModelVariant {
  CsOnlyRwa,             // 6x6: (X1,Y1,x1,p1,x2,p2)
  FullRwa,               // 8x8: (X1,Y1,X2,Y2,x1,p1,x2,p2)
  Counterrotating,       // 8x8 with harmonics at 2*omega1
  DetunedMode2Resonant,  // 8x8, g1 entries modulated at delta12
  DetunedMode1Resonant,  // 8x8, g2 entries modulated at delta12
};

std::string_view to_string(ModelVariant v);
std::optional<ModelVariant> parse_variant(std::string_view name);

/// One harmonic order of a periodic drift.
struct Harmonic {
  int order = 1;
  Matrix cosine;
  Matrix sine;
};

/// A(t) = A0 + sqrt(2) * sum_n [A_c^(n) cos(n w t) + A_s^(n) sin(n w t)].
///
/// The sqrt(2) normalization is part of the stored matrices: a builder whose
/// closed-form drift has a term C cos(w t) stores A_c^(1) = C / sqrt(2). The
/// Floquet assembler relies on this and needs no further scaling.
class DriftModel {
 public:
  DriftModel(QuadratureBasis basis, Matrix constant, std::vector<Harmonic> harmonics = {},
             double base_frequency = 0);

  const QuadratureBasis& basis() const noexcept { return basis_; }
  const Matrix& constant() const noexcept { return constant_; }
  const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }
  double base_frequency() const noexcept { return base_frequency_; }
  std::size_t dimension() const noexcept { return basis_.dimension(); }
  bool is_time_independent() const noexcept { return harmonics_.empty(); }
  int max_order() const noexcept;

  Matrix at(double t) const;
  DriftModel without_harmonics() const { return DriftModel(basis_, constant_); }

 private:
  QuadratureBasis basis_;
  Matrix constant_;
  std::vector<Harmonic> harmonics_;
  double base_frequency_;
};

/// Diagonal input-noise matrix N (rad/s), nonnegative.
class DiffusionMatrix {
 public:
  explicit DiffusionMatrix(Vector diagonal);
  const Vector& diagonal() const noexcept { return diagonal_; }
  Matrix matrix() const { return diagonal_.asDiagonal(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(diagonal_.size()); }

 private:
  Vector diagonal_;
};

/// beta1 = (lambda1 b1 + lambda2 b2^dag)/lambda_eff, beta2 = (lambda2 b1^dag + lambda1 b2)/lambda_eff.
struct BogoliubovData {
  double lambda_eff = 0;
  double weight1 = 0;  // lambda1 / lambda_eff
  double weight2 = 0;  // lambda2 / lambda_eff
};

DriftModel build_rwa_cs_drift(const SystemParams& p);
DriftModel build_rwa_full_drift(const SystemParams& p);
/// Requires omega1 == omega2; harmonics at base 2*omega1.
DriftModel build_counterrotating_drift(const SystemParams& p);
/// Harmonics at |delta12|; constant model when delta12 == 0 or g1 == 0.
DriftModel build_detuned_drift_mode2_resonant(const SystemParams& p);
/// Harmonics at |delta12|; constant model when delta12 == 0 or g2 == 0.
DriftModel build_detuned_drift_mode1_resonant(const SystemParams& p);

DriftModel build_drift(ModelVariant variant, const SystemParams& p);

DiffusionMatrix build_diffusion(const SystemParams& p, int n_cavities);
DiffusionMatrix build_diffusion(ModelVariant variant, const SystemParams& p);

/// Mode indices of the two particles within the variant's basis.
std::array<std::size_t, 2> mechanical_modes(ModelVariant variant);

BogoliubovData bogoliubov(const SystemParams& p);

struct StabilityReport {
  bool stable = false;
  double spectral_abscissa = 0;
};

/// Hurwitz rule shared by every solver: abscissa < -1e-12 * max(1, ||A||_F).
bool is_hurwitz(double spectral_abscissa, double drift_norm);

StabilityReport stability_check(const Matrix& a);
/// Constant models are checked directly; harmonic models through their
/// Floquet embedding at the given truncation (see floquet_stability).
StabilityReport stability_check(const DriftModel& m, int truncation = 10);

}  // namespace levent
