#include "levent/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "levent/error.hpp"

namespace levent {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_index(const CovarianceMatrix& v, std::size_t i) {
  if (i >= v.dimension()) {
    throw Error(ErrorCode::InvalidArgument,
                "quadrature index " + std::to_string(i) + " out of range for dimension " +
                    std::to_string(v.dimension()));
  }
}

void check_mode(const CovarianceMatrix& v, std::size_t mode) {
  if (mode >= v.mode_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "mode index " + std::to_string(mode) + " out of range for " +
                    std::to_string(v.mode_count()) + " modes");
  }
}

Eigen::LLT<Matrix> cholesky(const CovarianceMatrix& v) {
  Eigen::LLT<Matrix> llt(v.matrix());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidState, "covariance matrix is not positive definite");
  }
  return llt;
}

}  // namespace

// --- QuadratureBasis --------------------------------------------------------

QuadratureBasis::QuadratureBasis(std::vector<std::string> mode_names) : modes_(std::move(mode_names)) {
  std::set<std::string> seen;
  for (const auto& m : modes_) {
    if (m.empty()) throw Error(ErrorCode::InvalidArgument, "empty mode name");
    if (!seen.insert(m).second) throw Error(ErrorCode::InvalidArgument, "duplicate mode name '" + m + "'");
  }
}

QuadratureBasis QuadratureBasis::from_labels(std::span<const Quadrature> labels) {
  if (labels.size() % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "quadrature basis must have even length");
  }
  std::vector<std::string> modes;
  for (std::size_t i = 0; i < labels.size(); i += 2) {
    const auto& q = labels[i];
    const auto& p = labels[i + 1];
    if (q.kind != QuadratureKind::Position || p.kind != QuadratureKind::Momentum || q.mode != p.mode) {
      throw Error(ErrorCode::InvalidArgument,
                  "mode '" + q.mode + "' must contribute adjacent position and momentum entries");
    }
    modes.push_back(q.mode);
  }
  return QuadratureBasis(std::move(modes));
}

QuadratureBasis QuadratureBasis::generic(std::size_t mode_count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < mode_count; ++i) names.push_back("m" + std::to_string(i));
  return QuadratureBasis(std::move(names));
}

std::vector<Quadrature> QuadratureBasis::labels() const {
  std::vector<Quadrature> out;
  out.reserve(dimension());
  for (const auto& m : modes_) {
    out.push_back({m, QuadratureKind::Position});
    out.push_back({m, QuadratureKind::Momentum});
  }
  return out;
}

std::optional<std::size_t> QuadratureBasis::find_mode(std::string_view name) const {
  auto it = std::find(modes_.begin(), modes_.end(), name);
  if (it == modes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

QuadratureBasis QuadratureBasis::select(std::span<const std::size_t> mode_indices) const {
  std::vector<std::string> names;
  for (auto m : mode_indices) {
    if (m >= modes_.size()) {
      throw Error(ErrorCode::InvalidArgument, "mode index " + std::to_string(m) + " out of range");
    }
    names.push_back(modes_[m]);
  }
  return QuadratureBasis(std::move(names));  // rejects repeated indices
}

// --- CovarianceMatrix ---------------------------------------------------------

CovarianceMatrix::CovarianceMatrix(QuadratureBasis basis, Matrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  const auto d = idx(basis_.dimension());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "covariance matrix is " + std::to_string(entries_.rows()) + "x" +
                    std::to_string(entries_.cols()) + " but basis has dimension " + std::to_string(d));
  }
  if (!entries_.allFinite()) throw Error(ErrorCode::InvalidState, "covariance matrix has non-finite entries");
  const double scale = std::max(entries_.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() / scale;
  if (asym > 1e-10) {
    throw Error(ErrorCode::InvalidState, "covariance matrix is not symmetric (relative asymmetry " +
                                             std::to_string(asym) + ")");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

CovarianceMatrix CovarianceMatrix::identity(QuadratureBasis basis) {
  const auto d = idx(basis.dimension());
  return CovarianceMatrix(std::move(basis), Matrix::Identity(d, d));
}

CovarianceMatrix CovarianceMatrix::thermal(QuadratureBasis basis, std::span<const double> occupations) {
  if (occupations.size() != basis.mode_count()) {
    throw Error(ErrorCode::DimensionMismatch, "one occupation per mode required");
  }
  Vector diag(idx(basis.dimension()));
  for (std::size_t m = 0; m < occupations.size(); ++m) {
    if (occupations[m] < 0) throw Error(ErrorCode::InvalidArgument, "negative thermal occupation");
    diag(idx(2 * m)) = diag(idx(2 * m + 1)) = 2 * occupations[m] + 1;
  }
  return CovarianceMatrix(std::move(basis), diag.asDiagonal());
}

// --- operations ---------------------------------------------------------------

Matrix symplectic_form(std::size_t mode_count) {
  const auto d = idx(2 * mode_count);
  Matrix omega = Matrix::Zero(d, d);
  for (Eigen::Index m = 0; m < d; m += 2) {
    omega(m, m + 1) = 1;
    omega(m + 1, m) = -1;
  }
  return omega;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const auto llt = cholesky(v);
  const Matrix l = llt.matrixL();
  const Matrix m = l.transpose() * symplectic_form(v.mode_count()) * l;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();  // descending

  const double tol = 1e-9 * std::max(1.0, s(0));
  std::vector<double> nu;
  for (Eigen::Index k = 0; k + 1 < s.size(); k += 2) {
    if (std::abs(s(k) - s(k + 1)) > tol) {
      throw Error(ErrorCode::InvalidState, "symplectic spectrum does not pair up");
    }
    nu.push_back(0.5 * (s(k) + s(k + 1)));
  }
  std::sort(nu.begin(), nu.end());
  return nu;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v, std::size_t mode) {
  check_mode(v, mode);
  Matrix out = v.matrix();
  const auto p = idx(2 * mode + 1);
  out.row(p) *= -1;
  out.col(p) *= -1;
  return CovarianceMatrix(v.basis(), std::move(out));
}

CovarianceMatrix marginal(const CovarianceMatrix& v, std::span<const std::size_t> modes) {
  for (auto m : modes) check_mode(v, m);
  auto basis = v.basis().select(modes);
  std::vector<Eigen::Index> rows;
  for (auto m : modes) {
    rows.push_back(idx(2 * m));
    rows.push_back(idx(2 * m + 1));
  }
  const auto d = static_cast<Eigen::Index>(rows.size());
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = v.matrix()(rows[i], rows[j]);
  return CovarianceMatrix(std::move(basis), std::move(out));
}

double purity(const CovarianceMatrix& v) {
  Eigen::LLT<Matrix> llt(v.matrix());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidState, "purity requires det V > 0");
  }
  // det V = prod L_ii^2, accumulated in logs to avoid overflow for hot states.
  const Matrix& l = llt.matrixLLT();
  double log_sqrt_det = 0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_sqrt_det += std::log(l(i, i));
  return std::exp(-log_sqrt_det);
}

double gaussian_fourth_moment(const CovarianceMatrix& v, std::size_t i, std::size_t j, std::size_t k,
                              std::size_t l) {
  for (auto a : {i, j, k, l}) check_index(v, a);
  return 2 * (v(i, j) * v(k, l) + v(i, k) * v(j, l) + v(i, l) * v(j, k));
}

bool is_physical(const CovarianceMatrix& v, double tol) {
  try {
    const auto nu = symplectic_eigenvalues(v);
    return nu.front() >= 1 - tol;
  } catch (const Error&) {
    return false;
  }
}

// --- text format ----------------------------------------------------------------

void write_covariance(std::ostream& out, const CovarianceMatrix& v) {
  out << "dim " << v.dimension() << "\n# basis:";
  for (const auto& q : v.basis().labels()) {
    out << ' ' << q.mode << (q.kind == QuadratureKind::Position ? ":x" : ":p");
  }
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    for (std::size_t j = 0; j < v.dimension(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", v(i, j));
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
}

CovarianceMatrix read_covariance(std::istream& in) {
  std::string line;
  std::optional<std::size_t> dim;
  std::optional<QuadratureBasis> basis;
  std::vector<double> values;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream ls(line.substr(first + 1));
      std::string tag;
      ls >> tag;
      if (tag != "basis:") continue;
      std::vector<Quadrature> labels;
      std::string tok;
      while (ls >> tok) {
        const auto colon = tok.rfind(':');
        if (colon == std::string::npos || colon + 2 != tok.size() ||
            (tok.back() != 'x' && tok.back() != 'p')) {
          throw Error(ErrorCode::Io, "bad basis label '" + tok + "'");
        }
        labels.push_back({tok.substr(0, colon),
                          tok.back() == 'x' ? QuadratureKind::Position : QuadratureKind::Momentum});
      }
      basis = QuadratureBasis::from_labels(labels);
      continue;
    }
    std::istringstream ls(line);
    if (!dim) {
      std::string tag;
      std::size_t d = 0;
      if (!(ls >> tag >> d) || tag != "dim" || d == 0 || d % 2 != 0) {
        throw Error(ErrorCode::Io, "expected 'dim <even number>' header");
      }
      dim = d;
      continue;
    }
    double x;
    while (ls >> x) values.push_back(x);
    if (!ls.eof()) throw Error(ErrorCode::Io, "non-numeric entry in covariance row");
  }
  if (!dim) throw Error(ErrorCode::Io, "missing 'dim' header");
  if (values.size() != *dim * *dim) {
    throw Error(ErrorCode::Io, "expected " + std::to_string(*dim * *dim) + " entries, found " +
                                   std::to_string(values.size()));
  }
  if (!basis) basis = QuadratureBasis::generic(*dim / 2);
  if (basis->dimension() != *dim) throw Error(ErrorCode::Io, "basis labels do not match 'dim'");
  const auto d = idx(*dim);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = values[static_cast<std::size_t>(i * d + j)];
  return CovarianceMatrix(std::move(*basis), std::move(m));
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::Unstable: return "unstable";
    case ErrorCode::UnsupportedVariant: return "unsupported-variant";
    case ErrorCode::IllDefinedMode: return "ill-defined-mode";
    case ErrorCode::DegenerateInput: return "degenerate-input";
    case ErrorCode::StepSize: return "step-size";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace levent
