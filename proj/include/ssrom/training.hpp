#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "ssrom/linalg.hpp"

namespace ssrom {

// Ground truth u_E and deterministic-ROM reference u_L^o for each training
// case. `dt` weights the discrete L2 norm (1 for static vectors).
struct TrainingSet {
  std::vector<Vector> truth_outputs;
  std::vector<Vector> reference_outputs;
  double dt = 1.0;

  std::size_t cases() const noexcept { return truth_outputs.size(); }
  void validate() const;
};

struct ObjectiveEstimate {
  int beta = 0;
  double mean = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
  double seconds = 0.0;
};

// One SROM realization at concentration beta, seeded by draw_seed: the
// predicted output for every training case, in training order. Called
// concurrently.
using SromPipeline = std::function<std::vector<Vector>(int beta, std::uint64_t draw_seed)>;

// sqrt(sum_t (u_t - ref_t)^2 dt).
double distance_to_reference(const Vector& u, const Vector& reference, double dt = 1.0);

// Monte-Carlo estimate of E[|d_o(u_L) - d_o(u_E)|^2 | beta]. Each draw
// contributes the mean over training cases; the standard error comes from
// the spread of those per-draw values. Draw i uses derive_seed(seed, i), so
// evaluations at different beta share random streams.
ObjectiveEstimate estimate_objective(int beta, const TrainingSet& training, const SromPipeline& pipeline, int n_mc,
                                     std::uint64_t seed);

struct BetaSearch {
  int beta_min = 1;  // k
  int beta_max = 64;
  int n_mc = 200;
  std::uint64_t seed = 0;
};

struct BetaTrainingResult {
  int beta = 0;
  ObjectiveEstimate best;
  std::vector<ObjectiveEstimate> trace;  // evaluation order
  double seconds = 0.0;
};

// Evaluates at the same noise level of all calls; overridable for tests.
using ObjectiveFunction = std::function<ObjectiveEstimate(int beta)>;

// Coarse grid {k, ceil(1.5k), 2k, 4k, ...} capped at beta_max, then integer
// golden-section refinement inside the bracket around the grid minimum.
// The incumbent only moves to a candidate that improves by more than one
// combined standard error; candidates are visited in increasing beta, so
// ties resolve toward smaller beta.
BetaTrainingResult optimize_beta(const ObjectiveFunction& objective, const BetaSearch& search);
BetaTrainingResult optimize_beta(const TrainingSet& training, const SromPipeline& pipeline,
                                 const BetaSearch& search);

std::vector<int> coarse_beta_grid(int beta_min, int beta_max);

void write_training_trace(const std::filesystem::path& path, const BetaTrainingResult& result);

}  // namespace ssrom
