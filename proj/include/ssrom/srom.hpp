#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ssrom/solvers.hpp"
#include "ssrom/stochastic_subspace.hpp"
#include "ssrom/system.hpp"

namespace ssrom {

// Galerkin reduction: every operator A becomes basis^T A basis and every force
// shape f becomes basis^T f.
struct ReducedSystem {
  Matrix mass;       // k x k, empty for static systems
  Matrix damping;    // k x k, empty when undamped
  Matrix stiffness;  // k x k
  std::vector<ForceTerm> force;
  SubspaceBasis basis;  // ambient n x k
  // Coordinates U_k of the basis inside range(V_r) when produced by a
  // two-stage reduction.
  std::optional<SubspaceBasis> coordinates;

  Eigen::Index dim() const noexcept { return stiffness.rows(); }
  Vector project(const Vector& ambient_force) const { return basis.basis().transpose() * ambient_force; }
  LinearSecondOrderSystem as_system() const;
};

ReducedSystem galerkin_project(const LinearSecondOrderSystem& system, const SubspaceBasis& basis);

// Operators projected once onto range(V_r): A_r = V_r^T A V_r, f_r = V_r^T f.
// reduce() then only touches r x r and r x k objects.
struct TwoStageOperators {
  Matrix left;  // V_r, n x r
  Matrix mass;
  Matrix damping;
  Matrix stiffness;
  std::vector<ForceTerm> force;

  Eigen::Index rank() const noexcept { return left.cols(); }
  Vector project(const Vector& ambient) const { return left.transpose() * ambient; }
  ReducedSystem reduce(const SubspaceBasis& coordinates) const;
};

TwoStageOperators two_stage_reduce(const LinearSecondOrderSystem& system, const CompactSvd& svd);

// q solving (basis^T K basis) q = basis^T f. Throws NumericalError with the
// condition estimate when the reduced stiffness is singular.
Vector solve_reduced_static(const ReducedSystem& reduced, const Vector& ambient_force);
Vector solve_reduced_static_projected(const ReducedSystem& reduced, const Vector& reduced_force);

// Rows of the full state to extract; empty means all rows.
struct OutputSelector {
  std::vector<Eigen::Index> rows;
};

// x = W q for each column of q, restricted to the selected rows.
Matrix reconstruct(const SubspaceBasis& basis, const Matrix& q, const OutputSelector& selector = {});
Vector reconstruct(const SubspaceBasis& basis, const Vector& q, const OutputSelector& selector = {});

// First k columns of the r x r identity: the reduced coordinates of V_k.
SubspaceBasis leading_coordinates(Eigen::Index r, int k);

// What one SROM realization produces.
struct DrawResult {
  Matrix solution;          // reduced solution (k x cases, or k x time steps)
  std::vector<Vector> qoi;  // one series per output channel
};

// Must be thread-safe: ensembles call it concurrently.
using DrawSolver = std::function<DrawResult(const ReducedSystem&)>;

// Static solves of several load cases, each reported as the reconstructed
// selected rows of x = W q.
DrawSolver make_static_solver(const TwoStageOperators& ops, const std::vector<Vector>& ambient_loads,
                              OutputSelector selector = {});

enum class Quantity { Displacement, Velocity, Acceleration };

struct MonitoredDof {
  Quantity quantity;
  Eigen::Index row;
};

// Newmark integration of the reduced system from rest; each channel is the
// lifted time series of one monitored quantity.
DrawSolver make_dynamic_solver(const NewmarkConfig& config, std::vector<MonitoredDof> channels);

// Channel series from a full-order trajectory.
std::vector<Vector> monitor(const Trajectory& trajectory, const std::vector<MonitoredDof>& channels);
std::vector<Vector> monitor(const Trajectory& reduced, const SubspaceBasis& basis,
                            const std::vector<MonitoredDof>& channels);

struct SampledBasis {
  SubspaceBasis coordinates;  // r x k
  std::uint64_t seed;         // seed that produced it
  int degenerate_attempts;    // rejected draws before it
};

// Draw `draw` of the stream `seed`: attempt a uses derive_seed(seed, draw, a).
// Degenerate samples (NumericalError from the sampler) move to the next
// attempt; after `max_attempts` the last error is rethrown.
SampledBasis sample_with_redraw(const SubspaceModel& model, std::uint64_t seed, std::uint64_t draw,
                                int max_attempts = 64);

struct EnsembleOptions {
  int n_draws = 1000;
  std::uint64_t seed = 0;
  double max_degenerate_fraction = 0.1;
  bool keep_solutions = false;
  // Test hook: every draw uses these resample indices (bootstrap only).
  std::optional<ResampleIndices> fixed_indices;
};

struct SromDraw {
  std::uint64_t seed;
  int degenerate_attempts;
  Matrix basis_reduced;
  Matrix solution;
  std::vector<Vector> qoi;
};

struct SromEnsemble {
  std::vector<SromDraw> draws;
  std::uint64_t seed = 0;
  SamplerKind kind = SamplerKind::Bootstrap;
  int subspace_dim = 0;
  int concentration = 0;
  Eigen::Index reduced_dim = 0;
  int degenerate_redraws = 0;

  std::size_t channels() const { return draws.empty() ? 0 : draws.front().qoi.size(); }
  // n_draws x T matrix of one output channel.
  Matrix qoi_matrix(std::size_t channel) const;
  nlohmann::json manifest() const;
};

// Draws run in parallel (OpenMP) and are gathered in draw order; the result
// is identical to build_ensemble_serial for the same inputs. Throws
// NumericalError when degenerate redraws exceed max_degenerate_fraction.
SromEnsemble build_ensemble(const TwoStageOperators& ops, const SubspaceModel& model, const DrawSolver& solver,
                            const EnsembleOptions& options);
SromEnsemble build_ensemble(const LinearSecondOrderSystem& system, const SubspaceModel& model,
                            const DrawSolver& solver, const EnsembleOptions& options);

// Single-threaded reference kept for testing the parallel path.
SromEnsemble build_ensemble_serial(const TwoStageOperators& ops, const SubspaceModel& model,
                                   const DrawSolver& solver, const EnsembleOptions& options);

}  // namespace ssrom
