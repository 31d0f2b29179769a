#pragma once

// Reference implementations that share no code with the library: the printed
// drift matrices typed in entry by entry, a Kronecker-vectorized Lyapunov
// solve, and brute-force spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "levent/system_model.hpp"

namespace ref {

using Matrix = Eigen::MatrixXd;

struct Rates {
  double l1, l2, g1, g2, k1, k2, y1, y2;
};

inline Rates rates_of(const levent::SystemParams& p) {
  return {p.lambda1, p.lambda2, p.g1, p.g2, p.kappa1, p.kappa2, p.gamma1, p.gamma2};
}

// Coherent scattering only, (X1, Y1, x1, p1, x2, p2).
inline Matrix cs_drift(const Rates& r) {
  Matrix a(6, 6);
  a << -r.k1 / 2, 0, 0, -r.l1, 0, r.l2,
       0, -r.k1 / 2, r.l1, 0, r.l2, 0,
       0, -r.l1, -r.y1 / 2, 0, 0, 0,
       r.l1, 0, 0, -r.y1 / 2, 0, 0,
       0, r.l2, 0, 0, -r.y2 / 2, 0,
       r.l2, 0, 0, 0, 0, -r.y2 / 2;
  return a;
}

// (X1, Y1, X2, Y2, x1, p1, x2, p2).
inline Matrix rwa_drift(const Rates& r) {
  Matrix a(8, 8);
  a << -r.k1 / 2, 0, 0, 0, 0, -r.l1, 0, r.l2,
       0, -r.k1 / 2, 0, 0, r.l1, 0, r.l2, 0,
       0, 0, -r.k2 / 2, 0, 0, r.g1, 0, r.g2,
       0, 0, 0, -r.k2 / 2, -r.g1, 0, -r.g2, 0,
       0, -r.l1, 0, r.g1, -r.y1 / 2, 0, 0, 0,
       r.l1, 0, -r.g1, 0, 0, -r.y1 / 2, 0, 0,
       0, r.l2, 0, r.g2, 0, 0, -r.y2 / 2, 0,
       r.l2, 0, -r.g2, 0, 0, 0, 0, -r.y2 / 2;
  return a;
}

// Counterrotating terms kept, c+- = 1 +- cos(2 w t), s = sin(2 w t).
inline Matrix counterrotating_drift(const Rates& r, double omega1, double t) {
  const double cp = 1 + std::cos(2 * omega1 * t);
  const double cm = 1 - std::cos(2 * omega1 * t);
  const double s = std::sin(2 * omega1 * t);
  Matrix a(8, 8);
  a << -r.k1 / 2, 0, 0, 0, -r.l1 * s, -r.l1 * cm, r.l2 * s, r.l2 * cm,
       0, -r.k1 / 2, 0, 0, r.l1 * cp, r.l1 * s, r.l2 * cp, r.l2 * s,
       0, 0, -r.k2 / 2, 0, r.g1 * s, r.g1 * cm, r.g2 * s, r.g2 * cm,
       0, 0, 0, -r.k2 / 2, -r.g1 * cp, -r.g1 * s, -r.g2 * cp, -r.g2 * s,
       -r.l1 * s, -r.l1 * cm, r.g1 * s, r.g1 * cm, -r.y1 / 2, 0, 0, 0,
       r.l1 * cp, r.l1 * s, -r.g1 * cp, -r.g1 * s, 0, -r.y1 / 2, 0, 0,
       -r.l2 * s, r.l2 * cm, r.g2 * s, r.g2 * cm, 0, 0, -r.y2 / 2, 0,
       r.l2 * cp, -r.l2 * s, -r.g2 * cp, -r.g2 * s, 0, 0, 0, -r.y2 / 2;
  return a;
}

// Second cavity resonant with particle 2; g1 entries rotate at delta.
inline Matrix mode2_resonant_drift(const Rates& r, double delta, double t) {
  const double c = std::cos(delta * t);
  const double s = std::sin(delta * t);
  Matrix a(8, 8);
  a << -r.k1 / 2, 0, 0, 0, 0, -r.l1, 0, r.l2,
       0, -r.k1 / 2, 0, 0, r.l1, 0, r.l2, 0,
       0, 0, -r.k2 / 2, 0, -r.g1 * s, r.g1 * c, 0, r.g2,
       0, 0, 0, -r.k2 / 2, -r.g1 * c, -r.g1 * s, -r.g2, 0,
       0, -r.l1, r.g1 * s, r.g1 * c, -r.y1 / 2, 0, 0, 0,
       r.l1, 0, -r.g1 * c, r.g1 * s, 0, -r.y1 / 2, 0, 0,
       0, r.l2, 0, r.g2, 0, 0, -r.y2 / 2, 0,
       r.l2, 0, -r.g2, 0, 0, 0, 0, -r.y2 / 2;
  return a;
}

// Second cavity resonant with particle 1; g2 entries rotate at delta.
inline Matrix mode1_resonant_drift(const Rates& r, double delta, double t) {
  const double c = std::cos(delta * t);
  const double s = std::sin(delta * t);
  Matrix a(8, 8);
  a << -r.k1 / 2, 0, 0, 0, 0, -r.l1, 0, r.l2,
       0, -r.k1 / 2, 0, 0, r.l1, 0, r.l2, 0,
       0, 0, -r.k2 / 2, 0, 0, r.g1, r.g2 * s, r.g2 * c,
       0, 0, 0, -r.k2 / 2, -r.g1, 0, -r.g2 * c, r.g2 * s,
       0, -r.l1, 0, r.g1, -r.y1 / 2, 0, 0, 0,
       r.l1, 0, -r.g1, 0, 0, -r.y1 / 2, 0, 0,
       0, r.l2, -r.g2 * s, r.g2 * c, 0, 0, -r.y2 / 2, 0,
       r.l2, 0, -r.g2 * c, -r.g2 * s, 0, 0, 0, -r.y2 / 2;
  return a;
}

// Solves (I (x) A + A (x) I) vec V = -vec N. Fine up to d ~ 40.
inline Matrix kron_lyapunov(const Matrix& a, const Matrix& n) {
  const Eigen::Index d = a.rows();
  const Matrix eye = Matrix::Identity(d, d);
  Matrix big = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      big.block(i * d, j * d, d, d) += eye(i, j) * a;
      big.block(i * d, j * d, d, d) += a(i, j) * eye;
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(n.data(), d * d);
  const Eigen::VectorXd x = big.fullPivLu().solve(rhs);
  return Eigen::Map<const Matrix>(x.data(), d, d);
}

inline Matrix omega(Eigen::Index modes) {
  Matrix o = Matrix::Zero(2 * modes, 2 * modes);
  for (Eigen::Index m = 0; m < modes; ++m) {
    o(2 * m, 2 * m + 1) = 1;
    o(2 * m + 1, 2 * m) = -1;
  }
  return o;
}

// |eig(i Omega V)|, one per +-pair, ascending.
inline std::vector<double> brute_symplectic(const Matrix& v) {
  const Eigen::Index modes = v.rows() / 2;
  const Eigen::MatrixXcd m = std::complex<double>(0, 1) * (omega(modes) * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<double> mods;
  for (Eigen::Index i = 0; i < m.rows(); ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(mods.begin(), mods.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < mods.size(); i += 2) out.push_back(mods[i]);
  return out;
}

// Two-mode squeezed vacuum with x1 + x2 and p1 - p2 squeezed.
inline Matrix tms(double r) {
  const double c = std::cosh(2 * r);
  const double s = std::sinh(2 * r);
  Matrix v(4, 4);
  v << c, 0, -s, 0,
       0, c, 0, s,
       -s, 0, c, 0,
       0, s, 0, c;
  return v;
}

// Random physical state S D S^T: S a product of random symplectic maps, D
// thermal with every symplectic eigenvalue in [1, 3].
inline Matrix random_physical(std::mt19937_64& rng, Eigen::Index modes) {
  std::uniform_real_distribution<double> u(-1, 1);
  const Eigen::Index d = 2 * modes;
  Matrix s = Matrix::Identity(d, d);
  for (int rep = 0; rep < 3; ++rep) {
    // exp(Omega H) with H symmetric is symplectic.
    Matrix h(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) h(i, j) = 0.3 * u(rng);
    h = (h + h.transpose()).eval();
    const Matrix g = omega(modes) * h;
    // Truncated series is good to far below test tolerances for |g| < 2.
    Matrix term = Matrix::Identity(d, d), e = Matrix::Identity(d, d);
    for (int k = 1; k < 40; ++k) {
      term = (term * g / k).eval();
      e += term;
    }
    s = (e * s).eval();
  }
  Matrix diag = Matrix::Zero(d, d);
  for (Eigen::Index m = 0; m < modes; ++m) {
    const double nu = 1 + 2 * std::abs(u(rng));
    diag(2 * m, 2 * m) = nu;
    diag(2 * m + 1, 2 * m + 1) = nu;
  }
  return s * diag * s.transpose();
}

// Random Hurwitz matrix with spectral abscissa at -margin.
inline Matrix random_stable(std::mt19937_64& rng, Eigen::Index d, double margin = 0.1) {
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::EigenSolver<Matrix> es(a, false);
  const double abscissa = es.eigenvalues().real().maxCoeff();
  a -= (abscissa + margin) * Matrix::Identity(d, d);
  return a;
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

// Production-scale rates in rad/s, lambda2 = ratio * lambda1.
inline levent::SystemParams figure_params(double ratio, double q = 1e9, double n = 2e7) {
  constexpr double kHz = 2 * 3.14159265358979323846 * 1e3;
  levent::SystemParams p;
  p.lambda1 = 100 * kHz;
  p.lambda2 = ratio * p.lambda1;
  p.g1 = 3 * kHz;
  p.g2 = 20 * kHz;
  p.kappa1 = p.kappa2 = 120 * kHz;
  p.set_frequencies(300 * kHz, 300 * kHz);
  p.set_quality_factors(q, q);
  p.n1 = p.n2 = n;
  return p;
}

// Distinct primes, so a transposed or misplaced entry cannot hide.
inline levent::SystemParams prime_params() {
  levent::SystemParams p;
  p.lambda1 = 2;
  p.lambda2 = 3;
  p.g1 = 5;
  p.g2 = 7;
  p.kappa1 = 11;
  p.kappa2 = 13;
  p.gamma1 = 17;
  p.gamma2 = 19;
  p.n1 = 23;
  p.n2 = 29;
  p.set_frequencies(31, 31);
  return p;
}

}  // namespace ref

#include <optional>

#include "levent/error.hpp"

namespace ref {

// Code of the levent::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<levent::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const levent::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace ref
