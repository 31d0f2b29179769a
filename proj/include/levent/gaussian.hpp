#pragma once

// Covariance-matrix algebra for zero-mean Gaussian states.
//
// Convention: V_jk = <r_j r_k + r_k r_j> - 2<r_j><r_k>, so the vacuum is the
// identity and an ordinary variance is Var(r_j) = V_jj / 2. Quadratures are
// ordered mode by mode, position-like first: (x_1, p_1, x_2, p_2, ...).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace levent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class QuadratureKind { Position, Momentum };

struct Quadrature {
  std::string mode;
  QuadratureKind kind;
  bool operator==(const Quadrature&) const = default;
};

/// Ordered quadrature labels. Each mode contributes one position-like and one
/// momentum-like entry, adjacent and in that order.
class QuadratureBasis {
 public:
  explicit QuadratureBasis(std::vector<std::string> mode_names);

  /// Validates a flat label list against the adjacency rule.
  static QuadratureBasis from_labels(std::span<const Quadrature> labels);
  /// Modes named "m0", "m1", ...
  static QuadratureBasis generic(std::size_t mode_count);

  std::size_t mode_count() const noexcept { return modes_.size(); }
  std::size_t dimension() const noexcept { return 2 * modes_.size(); }
  const std::vector<std::string>& modes() const noexcept { return modes_; }
  std::vector<Quadrature> labels() const;
  std::optional<std::size_t> find_mode(std::string_view name) const;

  QuadratureBasis select(std::span<const std::size_t> mode_indices) const;

  bool operator==(const QuadratureBasis&) const = default;

 private:
  std::vector<std::string> modes_;
};

/// Real symmetric covariance matrix over a QuadratureBasis. Immutable.
///
/// Input is symmetrized as (V + V^T)/2 when its asymmetry is below 1e-10
/// relative to the largest entry; larger asymmetry is an InvalidState error.
class CovarianceMatrix {
 public:
  CovarianceMatrix(QuadratureBasis basis, Matrix entries);

  static CovarianceMatrix identity(QuadratureBasis basis);
  /// Product of thermal states, V = diag(2n_j + 1) per mode.
  static CovarianceMatrix thermal(QuadratureBasis basis, std::span<const double> occupations);

  const QuadratureBasis& basis() const noexcept { return basis_; }
  const Matrix& matrix() const noexcept { return entries_; }
  std::size_t dimension() const noexcept { return basis_.dimension(); }
  std::size_t mode_count() const noexcept { return basis_.mode_count(); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  QuadratureBasis basis_;
  Matrix entries_;
};

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]].
Matrix symplectic_form(std::size_t mode_count);

/// Moduli of the eigenvalues of i*Omega*V, one per mode, ascending.
///
/// Computed in real arithmetic: with V = L L^T, the antisymmetric matrix
/// L^T Omega L is similar to Omega V and its singular values are the
/// symplectic eigenvalues, each appearing twice. Singular values keep the
/// small eigenvalues accurate even when V has entries of order 1e7.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

/// Flips the sign of the selected mode's momentum row and column.
CovarianceMatrix partial_transpose(const CovarianceMatrix& v, std::size_t mode);

/// Submatrix over the selected modes, in the given order.
CovarianceMatrix marginal(const CovarianceMatrix& v, std::span<const std::size_t> modes);

/// 1/sqrt(det V).
double purity(const CovarianceMatrix& v);

/// <{r_i,{r_j,{r_k,r_l}}}> = 2 (V_ij V_kl + V_ik V_jl + V_il V_jk) for zero mean.
double gaussian_fourth_moment(const CovarianceMatrix& v, std::size_t i, std::size_t j,
                              std::size_t k, std::size_t l);

/// V + i*Omega >= 0, tested as min symplectic eigenvalue >= 1 - tol.
bool is_physical(const CovarianceMatrix& v, double tol = 1e-9);

/// Plain-text format:
///   dim <2m>
///   # basis: <mode>:x <mode>:p ...
///   <2m rows of 2m whitespace-separated numbers>
void write_covariance(std::ostream& out, const CovarianceMatrix& v);
CovarianceMatrix read_covariance(std::istream& in);

}  // namespace levent
