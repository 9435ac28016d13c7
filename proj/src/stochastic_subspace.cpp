#include "ssrom/stochastic_subspace.hpp"

#include <cmath>
#include <string>

#include "ssrom/error.hpp"

namespace ssrom {

namespace {

// pi_k with the rank and gap checks that sampling needs.
SubspaceBasis sampled_principal_subspace(const Matrix& m, int k) {
  if (std::min(m.rows(), m.cols()) < k) {
    throw DegenerateResample("resampled matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", too small for k=" + std::to_string(k));
  }
  const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0 || s(k - 1) <= kDefaultRankTol * s(0)) {
    throw DegenerateResample("degenerate resample: rank below k=" + std::to_string(k));
  }
  const double next = k < s.size() ? s(k) : 0.0;
  if (!(s(k - 1) - next > kDefaultGapTol * s(0))) throw IllDefinedSubspace(s(k - 1) - next, k);
  return SubspaceBasis(svd.matrixU().leftCols(k));
}

}  // namespace

std::string_view to_string(SamplerKind kind) noexcept {
  return kind == SamplerKind::Bootstrap ? "bootstrap" : "ppca";
}

SamplerKind parse_sampler_kind(std::string_view text) {
  if (text == "bootstrap") return SamplerKind::Bootstrap;
  if (text == "ppca") return SamplerKind::Ppca;
  throw InputError("unknown sampler '" + std::string(text) + "' (expected bootstrap or ppca)");
}

SubspaceModel::SubspaceModel(CompactSvd svd, Eigen::Index snapshot_count, int subspace_dim,
                             int concentration, SamplerKind kind)
    : svd_(std::move(svd)),
      snapshot_count_(snapshot_count),
      subspace_dim_(subspace_dim),
      concentration_(concentration),
      kind_(kind) {
  if (svd_.right.rows() != snapshot_count_) {
    throw InputError("subspace model: right singular vectors have " + std::to_string(svd_.right.rows()) +
                     " rows, snapshot count is " + std::to_string(snapshot_count_));
  }
  if (subspace_dim_ < 1 || subspace_dim_ > svd_.rank() || subspace_dim_ > snapshot_count_) {
    throw InputError("subspace model: k=" + std::to_string(subspace_dim_) + " must satisfy 1 <= k <= min(r=" +
                     std::to_string(svd_.rank()) + ", m=" + std::to_string(snapshot_count_) + ")");
  }
  if (concentration_ < subspace_dim_) {
    throw InputError("subspace model: beta=" + std::to_string(concentration_) + " must be >= k=" +
                     std::to_string(subspace_dim_));
  }
}

SubspaceModel SubspaceModel::with_concentration(int beta) const {
  return SubspaceModel(svd_, snapshot_count_, subspace_dim_, beta, kind_);
}

SubspaceModel SubspaceModel::with_kind(SamplerKind kind) const {
  return SubspaceModel(svd_, snapshot_count_, subspace_dim_, concentration_, kind);
}

Vector SubspaceModel::covariance_scales() const {
  return svd_.singular_values / std::sqrt(static_cast<double>(snapshot_count_));
}

nlohmann::json SubspaceModel::summary() const {
  std::vector<double> spectrum(svd_.singular_values.data(),
                               svd_.singular_values.data() + svd_.singular_values.size());
  return {{"sampler", std::string(to_string(kind_))},
          {"state_dim", svd_.left.rows()},
          {"rank", svd_.rank()},
          {"subspace_dim", subspace_dim_},
          {"concentration", concentration_},
          {"snapshot_count", snapshot_count_},
          {"singular_values", spectrum}};
}

ResampleIndices draw_indices(const SubspaceModel& model, Rng& rng) {
  std::uniform_int_distribution<Eigen::Index> pick(0, model.snapshot_count() - 1);
  ResampleIndices out;
  out.indices.resize(static_cast<std::size_t>(model.concentration()));
  for (auto& i : out.indices) i = pick(rng);
  return out;
}

SubspaceBasis sample_bootstrap(const SubspaceModel& model, const ResampleIndices& indices) {
  const auto& svd = model.svd();
  const auto r = svd.rank();
  const auto beta = static_cast<Eigen::Index>(indices.indices.size());
  if (beta != model.concentration()) {
    throw InputError("bootstrap: expected " + std::to_string(model.concentration()) + " resample indices, got " +
                     std::to_string(beta));
  }
  Matrix resampled(r, beta);
  for (Eigen::Index j = 0; j < beta; ++j) {
    const Eigen::Index b = indices.indices[static_cast<std::size_t>(j)];
    if (b < 0 || b >= model.snapshot_count()) {
      throw InputError("resample index " + std::to_string(b) + " out of range [0, " +
                       std::to_string(model.snapshot_count()) + ")");
    }
    resampled.col(j) = svd.singular_values.cwiseProduct(svd.right.row(b).transpose());
  }
  return sampled_principal_subspace(resampled, model.subspace_dim());
}

SubspaceBasis sample_ppca(const SubspaceModel& model, Rng& rng) {
  const Vector scales = model.covariance_scales();
  const auto r = model.reduced_dim();
  const auto beta = static_cast<Eigen::Index>(model.concentration());
  std::normal_distribution<double> normal;
  Matrix z(r, beta);
  for (int attempt = 0;; ++attempt) {
    for (Eigen::Index j = 0; j < beta; ++j) {
      for (Eigen::Index i = 0; i < r; ++i) z(i, j) = scales(i) * normal(rng);
    }
    try {
      return sampled_principal_subspace(z, model.subspace_dim());
    } catch (const NumericalError&) {
      if (attempt >= 3) throw NumericalError("PPCA sampler: Gaussian draw degenerate after 3 redraws");
    }
  }
}

SubspaceBasis sample_reduced(const SubspaceModel& model, Rng& rng) {
  if (model.kind() == SamplerKind::Bootstrap) return sample_bootstrap(model, draw_indices(model, rng));
  return sample_ppca(model, rng);
}

SubspaceBasis lift_to_ambient(const SubspaceModel& model, const SubspaceBasis& reduced) {
  if (reduced.ambient_dim() != model.reduced_dim()) {
    throw InputError("lift_to_ambient: reduced basis has " + std::to_string(reduced.ambient_dim()) +
                     " rows, model rank is " + std::to_string(model.reduced_dim()));
  }
  return SubspaceBasis(model.svd().left * reduced.basis());
}

SubspaceBasis sample_bootstrap_ambient(const Matrix& centered_snapshots, const ResampleIndices& indices, int k) {
  Matrix resampled(centered_snapshots.rows(), static_cast<Eigen::Index>(indices.indices.size()));
  for (std::size_t j = 0; j < indices.indices.size(); ++j) {
    resampled.col(static_cast<Eigen::Index>(j)) = centered_snapshots.col(indices.indices[j]);
  }
  return principal_subspace(resampled, k);
}

}  // namespace ssrom
