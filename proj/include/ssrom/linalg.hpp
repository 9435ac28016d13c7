#pragma once

#include <Eigen/Dense>

namespace ssrom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-12;
inline constexpr double kDefaultGapTol = 1e-12;

// State samples stored column-wise, n rows by m snapshots, together with the
// column mean that was removed when `centered()` is true.
class SnapshotMatrix {
 public:
  SnapshotMatrix(Matrix data, Vector mean, bool centered);

  const Matrix& data() const noexcept { return data_; }
  const Vector& mean() const noexcept { return mean_; }
  bool centered() const noexcept { return centered_; }
  Eigen::Index state_dim() const noexcept { return data_.rows(); }
  Eigen::Index count() const noexcept { return data_.cols(); }

 private:
  Matrix data_;
  Vector mean_;
  bool centered_;
};

// a = left * diag(singular_values) * right^T with only the numerically
// nonzero singular triplets kept.
struct CompactSvd {
  Matrix left;             // p x r
  Vector singular_values;  // r, strictly positive, non-increasing
  Matrix right;            // m x r

  Eigen::Index rank() const noexcept { return singular_values.size(); }
  Matrix reconstruct() const;
};

// A point on the Grassmannian Gr(p, k), stored as a column-orthonormal p x k
// frame. Two bases represent the same subspace iff all principal angles
// between them vanish; entries are never compared directly.
class SubspaceBasis {
 public:
  // Throws InputError unless basis^T basis = I within `tol`.
  explicit SubspaceBasis(Matrix basis, double tol = 1e-10);

  const Matrix& basis() const noexcept { return basis_; }
  Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }
  Eigen::Index subspace_dim() const noexcept { return basis_.cols(); }

 private:
  Matrix basis_;
};

// Removes the column mean. Throws InputError on non-finite input or m = 0.
SnapshotMatrix center(const Matrix& raw);

// Keeps singular values above rank_tol * sigma_max. Throws NumericalError for
// an all-zero matrix.
CompactSvd compact_svd(const Matrix& a, double rank_tol = kDefaultRankTol);

// Span of the top-k left singular vectors. Throws IllDefinedSubspace when
// sigma_k - sigma_{k+1} <= gap_tol * sigma_1 (sigma_{k+1} = 0 if k = min(p, m)).
SubspaceBasis principal_subspace(const Matrix& a, int k, double gap_tol = kDefaultGapTol);

// Smallest k whose cumulative squared energy reaches tau of the total.
int select_pod_dimension(const Vector& singular_values, double tau);

// Principal angles in [0, pi/2], non-decreasing. Cosines come from the
// singular values of u^T v; small angles are resolved through sines of the
// residual v - u u^T v so that nearly equal subspaces report angles near
// machine precision instead of sqrt(eps).
Vector principal_angles(const SubspaceBasis& u, const SubspaceBasis& v);

double largest_principal_angle(const SubspaceBasis& u, const SubspaceBasis& v);

bool all_finite(const Matrix& a);

}  // namespace ssrom
