#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "ssrom/linalg.hpp"
#include "ssrom/rng.hpp"

namespace ssrom {

enum class SamplerKind { Bootstrap, Ppca };

std::string_view to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler_kind(std::string_view text);

// Column indices drawn with replacement. Stored 0-based: entries lie in
// [0, m).
struct ResampleIndices {
  std::vector<Eigen::Index> indices;
};

// Distribution over k-dimensional subspaces of range(V_r), parameterized by
// the compact SVD of the (centered or raw) snapshots and the concentration beta
// (number of resampled columns, beta >= k). Larger beta concentrates the
// samples around the POD subspace span(V_k).
class SubspaceModel {
 public:
  SubspaceModel(CompactSvd svd, Eigen::Index snapshot_count, int subspace_dim, int concentration,
                SamplerKind kind);

  const CompactSvd& svd() const noexcept { return svd_; }
  Eigen::Index snapshot_count() const noexcept { return snapshot_count_; }
  int subspace_dim() const noexcept { return subspace_dim_; }
  int concentration() const noexcept { return concentration_; }
  SamplerKind kind() const noexcept { return kind_; }
  Eigen::Index reduced_dim() const noexcept { return svd_.rank(); }

  // Same spectrum and data, different beta or sampler.
  SubspaceModel with_concentration(int beta) const;
  SubspaceModel with_kind(SamplerKind kind) const;

  // Square roots of the covariance eigenvalues, sigma_i / sqrt(m).
  Vector covariance_scales() const;

  nlohmann::json summary() const;

 private:
  CompactSvd svd_;
  Eigen::Index snapshot_count_;
  int subspace_dim_;
  int concentration_;
  SamplerKind kind_;
};

ResampleIndices draw_indices(const SubspaceModel& model, Rng& rng);

// Bootstrap sample in reduced coordinates: U_k spanning pi_k(diag(sigma_r) W_r(b,:)^T).
// Only r x beta work is done here. Throws DegenerateResample when that
// matrix has rank below k and IllDefinedSubspace when the gap at k vanishes.
SubspaceBasis sample_bootstrap(const SubspaceModel& model, const ResampleIndices& indices);

// PPCA sample in reduced coordinates: U_k spanning pi_k(diag(sigma_r / sqrt(m)) Z),
// Z an r x beta standard Gaussian matrix. Degenerate Gaussian draws are
// redrawn up to three times before NumericalError.
SubspaceBasis sample_ppca(const SubspaceModel& model, Rng& rng);

// Dispatches on model.kind().
SubspaceBasis sample_reduced(const SubspaceModel& model, Rng& rng);

// W = V_r U_k.
SubspaceBasis lift_to_ambient(const SubspaceModel& model, const SubspaceBasis& reduced);

// Reference construction: resample the columns of the centered snapshot
// matrix in ambient space and take pi_k of the n x beta result.
SubspaceBasis sample_bootstrap_ambient(const Matrix& centered_snapshots, const ResampleIndices& indices,
                                       int k);

}  // namespace ssrom
