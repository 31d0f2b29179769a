#include "levent/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levent/error.hpp"
#include "levent/floquet.hpp"

namespace levent {

namespace {

// Basis positions of the 8x8 models.
enum Full : Eigen::Index { X1 = 0, Y1, X2, Y2, x1, p1, x2, p2 };
// Basis positions of the 6x6 coherent-scattering model.
enum Cs : Eigen::Index { cX1 = 0, cY1, cx1, cp1, cx2, cp2 };

QuadratureBasis full_basis() { return QuadratureBasis({"a1", "a2", "b1", "b2"}); }
QuadratureBasis cs_basis() { return QuadratureBasis({"a1", "b1", "b2"}); }

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite and >= 0");
  }
}

Matrix rwa_full_constant(const SystemParams& p, bool with_g1, bool with_g2) {
  Matrix a = Matrix::Zero(8, 8);
  a(X1, X1) = a(Y1, Y1) = -p.kappa1 / 2;
  a(X2, X2) = a(Y2, Y2) = -p.kappa2 / 2;
  a(x1, x1) = a(p1, p1) = -p.gamma1 / 2;
  a(x2, x2) = a(p2, p2) = -p.gamma2 / 2;

  a(X1, p1) = -p.lambda1;
  a(X1, p2) = p.lambda2;
  a(Y1, x1) = p.lambda1;
  a(Y1, x2) = p.lambda2;
  a(x1, Y1) = -p.lambda1;
  a(p1, X1) = p.lambda1;
  a(x2, Y1) = p.lambda2;
  a(p2, X1) = p.lambda2;

  if (with_g1) {
    a(X2, p1) = p.g1;
    a(Y2, x1) = -p.g1;
    a(x1, Y2) = p.g1;
    a(p1, X2) = -p.g1;
  }
  if (with_g2) {
    a(X2, p2) = p.g2;
    a(Y2, x2) = -p.g2;
    a(x2, Y2) = p.g2;
    a(p2, X2) = -p.g2;
  }
  return a;
}

// Wraps closed-form coefficients of cos(w t) and sin(w t) into the sqrt(2)
// storage convention. A negative detuning is folded into the sine part so the
// stored base frequency stays positive.
DriftModel single_harmonic(QuadratureBasis basis, Matrix constant, const Matrix& cos_coeff,
                           Matrix sin_coeff, double signed_frequency) {
  if (signed_frequency < 0) sin_coeff = -sin_coeff;
  const double s = std::numbers::sqrt2;
  std::vector<Harmonic> h{{1, cos_coeff / s, sin_coeff / s}};
  return DriftModel(std::move(basis), std::move(constant), std::move(h), std::abs(signed_frequency));
}

}  // namespace

// --- SystemParams ----------------------------------------------------------------

void SystemParams::validate() const {
  require_nonnegative(lambda1, "lambda1");
  require_nonnegative(lambda2, "lambda2");
  require_nonnegative(g1, "g1");
  require_nonnegative(g2, "g2");
  require_nonnegative(kappa1, "kappa1");
  require_nonnegative(kappa2, "kappa2");
  require_nonnegative(gamma1, "gamma1");
  require_nonnegative(gamma2, "gamma2");
  require_nonnegative(n1, "n1");
  require_nonnegative(n2, "n2");
  if (!(omega1 > 0) || !(omega2 > 0) || !std::isfinite(omega1) || !std::isfinite(omega2)) {
    throw Error(ErrorCode::InvalidArgument, "mechanical frequencies must be positive");
  }
  const double expected = omega1 - omega2;
  if (std::abs(delta12 - expected) > 1e-9 * std::max(omega1, omega2)) {
    throw Error(ErrorCode::InvalidArgument, "delta12 does not equal omega1 - omega2");
  }
}

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::CsOnlyRwa: return "cs-only-rwa";
    case ModelVariant::FullRwa: return "full-rwa";
    case ModelVariant::Counterrotating: return "counterrotating";
    case ModelVariant::DetunedMode2Resonant: return "detuned-mode2-resonant";
    case ModelVariant::DetunedMode1Resonant: return "detuned-mode1-resonant";
  }
  return "unknown";
}

std::optional<ModelVariant> parse_variant(std::string_view name) {
  for (auto v : {ModelVariant::CsOnlyRwa, ModelVariant::FullRwa, ModelVariant::Counterrotating,
                 ModelVariant::DetunedMode2Resonant, ModelVariant::DetunedMode1Resonant}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

// --- DriftModel --------------------------------------------------------------------

DriftModel::DriftModel(QuadratureBasis basis, Matrix constant, std::vector<Harmonic> harmonics,
                       double base_frequency)
    : basis_(std::move(basis)),
      constant_(std::move(constant)),
      harmonics_(std::move(harmonics)),
      base_frequency_(base_frequency) {
  const auto d = static_cast<Eigen::Index>(basis_.dimension());
  auto check = [d](const Matrix& m) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "drift matrices must match the basis dimension");
    }
  };
  check(constant_);
  for (const auto& h : harmonics_) {
    check(h.cosine);
    check(h.sine);
    if (h.order < 1) throw Error(ErrorCode::InvalidArgument, "harmonic order must be >= 1");
  }
  if (!harmonics_.empty() && !(base_frequency_ > 0)) {
    throw Error(ErrorCode::InvalidArgument, "harmonic drift needs a positive base frequency");
  }
}

int DriftModel::max_order() const noexcept {
  int k = 0;
  for (const auto& h : harmonics_) k = std::max(k, h.order);
  return k;
}

Matrix DriftModel::at(double t) const {
  Matrix a = constant_;
  for (const auto& h : harmonics_) {
    const double phase = h.order * base_frequency_ * t;
    a += std::numbers::sqrt2 * (h.cosine * std::cos(phase) + h.sine * std::sin(phase));
  }
  return a;
}

DiffusionMatrix::DiffusionMatrix(Vector diagonal) : diagonal_(std::move(diagonal)) {
  for (Eigen::Index i = 0; i < diagonal_.size(); ++i) {
    if (!(diagonal_(i) >= 0) || !std::isfinite(diagonal_(i))) {
      throw Error(ErrorCode::InvalidArgument, "diffusion entries must be finite and >= 0");
    }
  }
}

// --- builders ----------------------------------------------------------------------

DriftModel build_rwa_cs_drift(const SystemParams& p) {
  p.validate();
  Matrix a = Matrix::Zero(6, 6);
  a(cX1, cX1) = a(cY1, cY1) = -p.kappa1 / 2;
  a(cx1, cx1) = a(cp1, cp1) = -p.gamma1 / 2;
  a(cx2, cx2) = a(cp2, cp2) = -p.gamma2 / 2;
  a(cX1, cp1) = -p.lambda1;
  a(cX1, cp2) = p.lambda2;
  a(cY1, cx1) = p.lambda1;
  a(cY1, cx2) = p.lambda2;
  a(cx1, cY1) = -p.lambda1;
  a(cp1, cX1) = p.lambda1;
  a(cx2, cY1) = p.lambda2;
  a(cp2, cX1) = p.lambda2;
  return DriftModel(cs_basis(), std::move(a));
}

DriftModel build_rwa_full_drift(const SystemParams& p) {
  p.validate();
  return DriftModel(full_basis(), rwa_full_constant(p, true, true));
}

DriftModel build_counterrotating_drift(const SystemParams& p) {
  p.validate();
  if (std::abs(p.omega1 - p.omega2) > 1e-9 * std::max(p.omega1, p.omega2)) {
    throw Error(ErrorCode::UnsupportedVariant,
                "counterrotating model needs omega1 == omega2; use a detuned builder");
  }
  const double l1 = p.lambda1, l2 = p.lambda2, g1 = p.g1, g2 = p.g2;
  // c_+(t) = 1 + cos, c_-(t) = 1 - cos, s(t) = sin, all at 2*omega1. The
  // constant parts of c_+- reproduce the RWA matrix.
  Matrix c = Matrix::Zero(8, 8);
  Matrix s = Matrix::Zero(8, 8);

  s(X1, x1) = -l1;  c(X1, p1) = l1;   s(X1, x2) = l2;   c(X1, p2) = -l2;
  c(Y1, x1) = l1;   s(Y1, p1) = l1;   c(Y1, x2) = l2;   s(Y1, p2) = l2;
  s(X2, x1) = g1;   c(X2, p1) = -g1;  s(X2, x2) = g2;   c(X2, p2) = -g2;
  c(Y2, x1) = -g1;  s(Y2, p1) = -g1;  c(Y2, x2) = -g2;  s(Y2, p2) = -g2;

  s(x1, X1) = -l1;  c(x1, Y1) = l1;   s(x1, X2) = g1;   c(x1, Y2) = -g1;
  c(p1, X1) = l1;   s(p1, Y1) = l1;   c(p1, X2) = -g1;  s(p1, Y2) = -g1;
  s(x2, X1) = -l2;  c(x2, Y1) = -l2;  s(x2, X2) = g2;   c(x2, Y2) = -g2;
  c(p2, X1) = l2;   s(p2, Y1) = -l2;  c(p2, X2) = -g2;  s(p2, Y2) = -g2;

  return single_harmonic(full_basis(), rwa_full_constant(p, true, true), c, s, 2 * p.omega1);
}

DriftModel build_detuned_drift_mode2_resonant(const SystemParams& p) {
  p.validate();
  if (p.delta12 == 0 || p.g1 == 0) return build_rwa_full_drift(p);
  const double g = p.g1;
  Matrix c = Matrix::Zero(8, 8);
  Matrix s = Matrix::Zero(8, 8);
  s(X2, x1) = -g;  c(X2, p1) = g;
  c(Y2, x1) = -g;  s(Y2, p1) = -g;
  s(x1, X2) = g;   c(x1, Y2) = g;
  c(p1, X2) = -g;  s(p1, Y2) = g;
  return single_harmonic(full_basis(), rwa_full_constant(p, false, true), c, s, p.delta12);
}

DriftModel build_detuned_drift_mode1_resonant(const SystemParams& p) {
  p.validate();
  if (p.delta12 == 0 || p.g2 == 0) return build_rwa_full_drift(p);
  const double g = p.g2;
  Matrix c = Matrix::Zero(8, 8);
  Matrix s = Matrix::Zero(8, 8);
  s(X2, x2) = g;   c(X2, p2) = g;
  c(Y2, x2) = -g;  s(Y2, p2) = g;
  s(x2, X2) = -g;  c(x2, Y2) = g;
  c(p2, X2) = -g;  s(p2, Y2) = -g;
  return single_harmonic(full_basis(), rwa_full_constant(p, true, false), c, s, p.delta12);
}

DriftModel build_drift(ModelVariant variant, const SystemParams& p) {
  switch (variant) {
    case ModelVariant::CsOnlyRwa: return build_rwa_cs_drift(p);
    case ModelVariant::FullRwa: return build_rwa_full_drift(p);
    case ModelVariant::Counterrotating: return build_counterrotating_drift(p);
    case ModelVariant::DetunedMode2Resonant: return build_detuned_drift_mode2_resonant(p);
    case ModelVariant::DetunedMode1Resonant: return build_detuned_drift_mode1_resonant(p);
  }
  throw Error(ErrorCode::UnsupportedVariant, "unknown model variant");
}

DiffusionMatrix build_diffusion(const SystemParams& p, int n_cavities) {
  p.validate();
  if (n_cavities != 1 && n_cavities != 2) {
    throw Error(ErrorCode::InvalidArgument, "n_cavities must be 1 or 2");
  }
  std::vector<double> d{p.kappa1, p.kappa1};
  if (n_cavities == 2) {
    d.push_back(p.kappa2);
    d.push_back(p.kappa2);
  }
  const double m1 = p.gamma1 * (2 * p.n1 + 1);
  const double m2 = p.gamma2 * (2 * p.n2 + 1);
  d.insert(d.end(), {m1, m1, m2, m2});
  return DiffusionMatrix(Eigen::Map<Vector>(d.data(), static_cast<Eigen::Index>(d.size())));
}

DiffusionMatrix build_diffusion(ModelVariant variant, const SystemParams& p) {
  return build_diffusion(p, variant == ModelVariant::CsOnlyRwa ? 1 : 2);
}

std::array<std::size_t, 2> mechanical_modes(ModelVariant variant) {
  if (variant == ModelVariant::CsOnlyRwa) return {1, 2};
  return {2, 3};
}

BogoliubovData bogoliubov(const SystemParams& p) {
  p.validate();
  if (!(p.lambda1 > p.lambda2)) {
    throw Error(ErrorCode::IllDefinedMode, "Bogoliubov modes need lambda1 > lambda2");
  }
  // (l1 - l2)(l1 + l2) keeps precision when the couplings are close.
  const double eff = std::sqrt((p.lambda1 - p.lambda2) * (p.lambda1 + p.lambda2));
  return {eff, p.lambda1 / eff, p.lambda2 / eff};
}

// --- stability -----------------------------------------------------------------------

bool is_hurwitz(double spectral_abscissa, double drift_norm) {
  return spectral_abscissa < -1e-12 * std::max(1.0, drift_norm);
}

StabilityReport stability_check(const Matrix& a) {
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidState, "eigenvalue computation did not converge");
  }
  const double abscissa = es.eigenvalues().real().maxCoeff();
  return {is_hurwitz(abscissa, a.norm()), abscissa};
}

StabilityReport stability_check(const DriftModel& m, int truncation) {
  if (m.is_time_independent()) return stability_check(m.constant());
  return floquet_stability(assemble_floquet_drift(m, truncation));
}

}  // namespace levent
