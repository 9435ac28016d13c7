#include "ssrom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssrom/error.hpp"

namespace ssrom {

namespace {

Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> thin_svd(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner>(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

std::string shape(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

bool all_finite(const Matrix& a) { return a.allFinite(); }

SnapshotMatrix::SnapshotMatrix(Matrix data, Vector mean, bool centered)
    : data_(std::move(data)), mean_(std::move(mean)), centered_(centered) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw InputError("snapshot matrix must be at least 1x1, got " + shape(data_));
  }
  if (mean_.size() != data_.rows()) {
    throw InputError("snapshot mean has length " + std::to_string(mean_.size()) +
                     ", expected " + std::to_string(data_.rows()));
  }
  if (!data_.allFinite() || !mean_.allFinite()) {
    throw InputError("snapshot matrix contains non-finite entries");
  }
  if (centered_) {
    for (Eigen::Index i = 0; i < data_.rows(); ++i) {
      const double scale = std::max(1.0, data_.row(i).cwiseAbs().maxCoeff());
      if (std::abs(data_.row(i).sum()) > 1e-10 * scale) {
        throw InputError("snapshot row " + std::to_string(i) + " is flagged centered but does not sum to zero");
      }
    }
  }
}

Matrix CompactSvd::reconstruct() const {
  return left * singular_values.asDiagonal() * right.transpose();
}

SubspaceBasis::SubspaceBasis(Matrix basis, double tol) : basis_(std::move(basis)) {
  const auto p = basis_.rows();
  const auto k = basis_.cols();
  if (k < 1 || k > p) {
    throw InputError("subspace basis must satisfy 1 <= k <= p, got " + shape(basis_));
  }
  const Matrix gram = basis_.transpose() * basis_;
  const double err = (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw InputError("subspace basis is not column-orthonormal (max |B^T B - I| = " +
                     std::to_string(err) + ")");
  }
}

SnapshotMatrix center(const Matrix& raw) {
  if (raw.cols() < 1 || raw.rows() < 1) throw InputError("center: empty snapshot matrix");
  if (!raw.allFinite()) throw InputError("center: snapshot matrix contains non-finite entries");
  Vector mean = raw.rowwise().mean();
  Matrix data = raw.colwise() - mean;
  return SnapshotMatrix(std::move(data), std::move(mean), true);
}

namespace {

// A row of a that is identically zero has an exactly-zero row in every left
// singular vector; the SVD returns roundoff there, so reset it.
void clear_zero_rows(const Matrix& a, Matrix& left) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if ((a.row(i).array() == 0.0).all()) left.row(i).setZero();
  }
}

}  // namespace

CompactSvd compact_svd(const Matrix& a, double rank_tol) {
  if (!a.allFinite()) throw InputError("compact_svd: non-finite entries");
  if (rank_tol < 0) throw InputError("compact_svd: rank_tol must be non-negative");
  if (a.size() == 0) throw InputError("compact_svd: empty matrix");
  const auto svd = thin_svd(a);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) throw NumericalError("zero matrix has no compact SVD");
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol * s(0)) ++r;
  Matrix left = svd.matrixU().leftCols(r);
  clear_zero_rows(a, left);
  return CompactSvd{std::move(left), s.head(r), svd.matrixV().leftCols(r)};
}

SubspaceBasis principal_subspace(const Matrix& a, int k, double gap_tol) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) {
    throw InputError("principal_subspace: k=" + std::to_string(k) + " out of range for " + shape(a));
  }
  if (!a.allFinite()) throw InputError("principal_subspace: non-finite entries");
  const auto svd = thin_svd(a);
  const Vector& s = svd.singularValues();
  const double next = k < s.size() ? s(k) : 0.0;
  const double gap = s(k - 1) - next;
  if (!(gap > gap_tol * s(0)) || s(0) == 0.0) throw IllDefinedSubspace(gap, k);
  Matrix u = svd.matrixU().leftCols(k);
  clear_zero_rows(a, u);
  return SubspaceBasis(std::move(u));
}

int select_pod_dimension(const Vector& singular_values, double tau) {
  if (singular_values.size() < 1) throw InputError("select_pod_dimension: empty spectrum");
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("select_pod_dimension: tau must lie in (0,1)");
  const double total = singular_values.squaredNorm();
  double cumulative = 0.0;
  for (Eigen::Index j = 0; j < singular_values.size(); ++j) {
    cumulative += singular_values(j) * singular_values(j);
    if (cumulative >= tau * total) return static_cast<int>(j + 1);
  }
  return static_cast<int>(singular_values.size());
}

Vector principal_angles(const SubspaceBasis& u, const SubspaceBasis& v) {
  if (u.ambient_dim() != v.ambient_dim() || u.subspace_dim() != v.subspace_dim()) {
    throw InputError("principal_angles: dimension mismatch (" + shape(u.basis()) + " vs " +
                     shape(v.basis()) + ")");
  }
  const Eigen::Index k = u.subspace_dim();
  const Matrix cross = u.basis().transpose() * v.basis();
  const Matrix residual = v.basis() - u.basis() * cross;

  // Cosines descend and sines ascend with the angle index.
  Vector cosines = Eigen::JacobiSVD<Matrix>(cross).singularValues();
  Vector sines = Eigen::JacobiSVD<Matrix>(residual).singularValues();
  std::sort(sines.data(), sines.data() + sines.size());
  if (sines.size() < k) {
    Vector padded = Vector::Zero(k);
    padded.tail(sines.size()) = sines;
    sines = padded;
  }

  Vector angles(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    const double s = std::clamp(sines(i), 0.0, 1.0);
    angles(i) = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.data(), angles.data() + k);
  return angles;
}

double largest_principal_angle(const SubspaceBasis& u, const SubspaceBasis& v) {
  return principal_angles(u, v).maxCoeff();
}

}  // namespace ssrom
