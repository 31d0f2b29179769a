#pragma once

// Steady-state covariance of a time-independent linear Langevin system:
// A V + V A^T + N = 0.

#include "levent/gaussian.hpp"
#include "levent/system_model.hpp"

namespace levent {

struct Residual {
  double absolute = 0;  // ||A V + V A^T + N||_F
  double relative = 0;  // absolute / ||N||_F
};

Residual residual(const Matrix& a, const Matrix& v, const Matrix& n);

/// Bartels-Stewart solve on the complex Schur form A = U T U^H. Does not test
/// stability; fails only when T_ii + conj(T_jj) vanishes for some pair, i.e.
/// when the equation is singular. The result is symmetrized.
Matrix solve_lyapunov(const Matrix& a, const Matrix& n);

/// A solution only counts as a steady state when its relative residual is
/// at most this and V is positive definite. Nearly defective drift at the
/// stability boundary can pass the eigenvalue test while the solve is
/// meaningless; such points are reported as unstable.
inline constexpr double kCertificateTolerance = 1e-3;

/// True when v is positive definite and |A V + V A^T + N| / |N| <= kCertificateTolerance.
bool certified_steady_state(const Matrix& v, const Residual& r);

struct SteadyState {
  CovarianceMatrix covariance;
  Residual residual;
  double asymmetry = 0;         // raw solver asymmetry relative to ||V||_max
  bool health_warning = false;  // asymmetry > 1e-8
  double spectral_abscissa = 0;
};

/// Refuses non-Hurwitz drift, or a solution failing the certificate, with UnstableError. Only constant models are
/// accepted; periodic models go through solve_floquet_steady_state.
SteadyState solve_steady_state(const DriftModel& a, const DiffusionMatrix& n);
SteadyState solve_steady_state(const QuadratureBasis& basis, const Matrix& a, const Matrix& n);

}  // namespace levent
