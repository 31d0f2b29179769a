#include "levent/lyapunov.hpp"

#include <algorithm>
#include <complex>

#include "levent/error.hpp"

namespace levent {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

void check_square_pair(const Matrix& a, const Matrix& other, const char* what) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "drift matrix must be square");
  if (other.rows() != a.rows() || other.cols() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " dimension does not match drift");
  }
}

class SchurLyapunov {
 public:
  explicit SchurLyapunov(const Matrix& a) : schur_(a) {
    if (schur_.info() != Eigen::Success) {
      throw Error(ErrorCode::InvalidState, "Schur decomposition did not converge");
    }
    const CMatrix& t = schur_.matrixT();
    scale_ = std::max(t.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.rows(); ++j) {
        if (std::abs(t(i, i) + std::conj(t(j, j))) < 1e-14 * scale_) {
          throw Error(ErrorCode::InvalidState, "Lyapunov equation is singular (eigenvalue pair sums to zero)");
        }
      }
    }
  }

  // X with A X + X A^T + C = 0, unsymmetrized.
  Matrix solve(const Matrix& c_real) const {
    const CMatrix& t = schur_.matrixT();
    const CMatrix& u = schur_.matrixU();
    const Eigen::Index d = t.rows();
    // With Y = U^H X U the equation becomes T Y + Y T^H = -C', C' = U^H C U.
    // Column j of Y T^H involves columns k >= j of Y, so sweep j downward; each
    // column is an upper-triangular solve with T + conj(T_jj) I.
    const CMatrix c = u.adjoint() * c_real.cast<std::complex<double>>() * u;
    CMatrix y = CMatrix::Zero(d, d);
    CMatrix shifted = t;
    for (Eigen::Index j = d - 1; j >= 0; --j) {
      CVector rhs = -c.col(j);
      for (Eigen::Index k = j + 1; k < d; ++k) rhs -= std::conj(t(j, k)) * y.col(k);
      shifted.diagonal() = t.diagonal().array() + std::conj(t(j, j));
      y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    return (u * y * u.adjoint()).real();
  }

 private:
  Eigen::ComplexSchur<Matrix> schur_;
  double scale_ = 0;
};

// Solve plus up to two steps of residual correction, which matter for the
// strongly non-normal drift of hot states near the stability boundary.
Matrix bartels_stewart(const Matrix& a, const Matrix& n) {
  const SchurLyapunov solver(a);
  Matrix v = solver.solve(n);
  double res = (a * v + v * a.transpose() + n).norm();
  for (int step = 0; step < 2; ++step) {
    const Matrix r = a * v + v * a.transpose() + n;
    const Matrix cand = v + solver.solve(r);
    const double cres = (a * cand + cand * a.transpose() + n).norm();
    if (!(cres < res)) break;
    v = cand;
    res = cres;
  }
  return v;
}

}  // namespace

Residual residual(const Matrix& a, const Matrix& v, const Matrix& n) {
  check_square_pair(a, v, "covariance");
  check_square_pair(a, n, "diffusion");
  Residual r;
  r.absolute = (a * v + v * a.transpose() + n).norm();
  const double nn = n.norm();
  r.relative = nn > 0 ? r.absolute / nn : r.absolute;
  return r;
}

bool certified_steady_state(const Matrix& v, const Residual& r) {
  if (!(r.relative <= kCertificateTolerance)) return false;
  return Eigen::LLT<Matrix>(v).info() == Eigen::Success;
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& n) {
  check_square_pair(a, n, "diffusion");
  Matrix v = bartels_stewart(a, n);
  return 0.5 * (v + v.transpose());
}

SteadyState solve_steady_state(const QuadratureBasis& basis, const Matrix& a, const Matrix& n) {
  check_square_pair(a, n, "diffusion");
  if (static_cast<std::size_t>(a.rows()) != basis.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "basis dimension does not match drift");
  }
  const auto stab = stability_check(a);
  if (!stab.stable) {
    throw UnstableError("drift is not Hurwitz; no steady state", stab.spectral_abscissa);
  }
  const Matrix raw = bartels_stewart(a, n);
  const double vmax = std::max(raw.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff() / vmax;
  Matrix v = 0.5 * (raw + raw.transpose());
  const Residual r = residual(a, v, n);
  if (!certified_steady_state(v, r)) {
    throw UnstableError("drift is Hurwitz only within round-off; steady-state solve not certified (relative residual " +
                            std::to_string(r.relative) + ")",
                        stab.spectral_abscissa);
  }
  return SteadyState{CovarianceMatrix(basis, std::move(v)), r, asym, asym > 1e-8, stab.spectral_abscissa};
}

SteadyState solve_steady_state(const DriftModel& a, const DiffusionMatrix& n) {
  if (!a.is_time_independent()) {
    throw Error(ErrorCode::InvalidArgument,
                "drift has harmonics; use the Floquet solver for periodic models");
  }
  if (n.dimension() != a.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "diffusion dimension does not match drift");
  }
  return solve_steady_state(a.basis(), a.constant(), n.matrix());
}

}  // namespace levent
