#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssrom/solvers.hpp"
#include "ssrom/srom.hpp"
#include "ssrom/training.hpp"
#include "ssrom/uq_metrics.hpp"

namespace ssrom {

enum class ParameterDistribution { Beta, Gaussian };

std::string_view to_string(ParameterDistribution d) noexcept;
ParameterDistribution parse_parameter_distribution(std::string_view text);

// Shared stochastic-ROM settings of both benchmarks.
struct SromSettings {
  int n_draws = 1000;      // ensemble size for the reported bands
  int n_mc_train = 200;    // Monte-Carlo draws per objective evaluation
  int beta_max = 64;
  double level = 0.95;
  std::optional<int> fixed_beta;  // skips training when set
  std::vector<SamplerKind> methods{SamplerKind::Bootstrap, SamplerKind::Ppca};
};

// ---- Parametric linear static problem -------------------------------------

struct StaticBenchmarkSpec {
  int n = 1000;
  int n_snapshots = 50;
  int k = 1;
  double beta_a = 0.5;  // parameter law Beta(a, b)
  double beta_b = 0.5;
  ParameterDistribution distribution = ParameterDistribution::Beta;
  double gaussian_mean = 0.5;  // used when distribution = Gaussian
  double gaussian_std = 0.1;
  double test_mu1 = 0.5;
  double test_mu2 = 0.5;
  bool center_snapshots = false;  // POD of the raw snapshots X
  std::uint64_t seed = 1;
  SromSettings srom;

  void validate() const;
};

// K = Phi Lambda Phi^T with Lambda = diag(4 pi^2 j^2), Phi = [0 S 0]^T and S
// the orthogonal order-(n-2) DST-I matrix; supports on the first and last
// DOF.
struct StaticProblem {
  int n = 0;
  Matrix modes;         // Phi, n x (n-2)
  Vector eigenvalues;   // 4 pi^2 j^2, j = 1..n-2
  Matrix stiffness;     // n x n
  Matrix constraints;   // [e_1, e_n]

  Vector mode(int j) const { return modes.col(j - 1); }  // 1-based
  // f(mu) = g / ||g||_inf with g = mu1 (phi_2 + phi_3) + mu2 (phi_4 + phi_5);
  // zero when g = 0.
  Vector load(double mu1, double mu2) const;
  Vector solve(const Vector& force) const;
};

// Orthogonal DST-I matrix of order p: sqrt(2/(p+1)) sin(j k pi / (p+1)).
Matrix dst1_matrix(int order);

StaticProblem build_static_system(int n);

// Training parameters (mu1, mu2) drawn by inverse CDF from the seeded stream.
std::vector<std::pair<double, double>> sample_static_parameters(const StaticBenchmarkSpec& spec);

struct MethodReport {
  SamplerKind kind = SamplerKind::Bootstrap;
  std::optional<BetaTrainingResult> training;
  int beta = 0;
  PredictionBand band;
  Vector ensemble_mean;
  double coverage = 0.0;
  double average_width = 0.0;
  double ensemble_seconds = 0.0;
  int degenerate_redraws = 0;
  nlohmann::json manifest;  // SromEnsemble::manifest()
  Matrix draws;             // n_draws x n QoI values
};

struct StaticReport {
  StaticBenchmarkSpec spec;
  Eigen::Index rank = 0;
  Vector singular_values;
  Vector truth;  // HDM displacement at mu_test
  Vector rom;    // deterministic ROM displacement at mu_test
  double rom_relative_error = 0.0;
  std::vector<MethodReport> methods;
  std::optional<double> width_ratio;          // PPCA / bootstrap, pointwise mean
  std::optional<double> average_width_ratio;  // PPCA / bootstrap, ratio of means
  double setup_seconds = 0.0;
  double total_seconds = 0.0;

  const MethodReport* method(SamplerKind kind) const;
};

// Everything up to and including the deterministic ROM and the training set;
// reused by `run` and `train`.
struct StaticPipeline {
  StaticBenchmarkSpec spec;
  StaticProblem problem;
  std::vector<std::pair<double, double>> parameters;
  Matrix snapshots;
  CompactSvd svd;
  TwoStageOperators operators;
  std::vector<Vector> training_loads;
  TrainingSet training;
  Vector test_load;
  Vector truth;
  Vector rom;

  SubspaceModel model(SamplerKind kind, int beta) const;
  SromPipeline training_pipeline(SamplerKind kind) const;
  BetaTrainingResult train(SamplerKind kind) const;
  MethodReport predict(SamplerKind kind, int beta) const;
};

StaticPipeline prepare_static_pipeline(const StaticBenchmarkSpec& spec);
StaticReport run_static_benchmark(const StaticBenchmarkSpec& spec);

// ---- Synthetic linear dynamics problem ------------------------------------

// Free-free spring-mass chain with one heavy lumped mass, stiffness-
// proportional damping and a half-sine impulse applied at the heavy mass.
// Units: ms for time.
struct DynamicBenchmarkSpec {
  int n = 200;
  double rayleigh_beta = 6.366e-6;
  double dt = 0.05;
  int n_steps = 1000;
  int k = 10;
  int snapshot_stride = 5;
  bool center_snapshots = true;
  double unit_mass = 1.0;
  double heavy_mass_factor = 100.0;
  int heavy_dof = -1;  // -1: n / 2
  double spring_stiffness = 100.0;
  double stiffness_variation = 0.0;  // springs scaled by exp(U(-v, v))
  double impulse_amplitude = 100.0;
  double impulse_duration = 1.0;
  int monitored_dof = -1;  // -1: 3n / 4 (critical point)
  int random_dof = -1;     // -1: n / 5 + 1
  std::uint64_t seed = 1;
  SromSettings srom{1000, 200, 160, 0.95, std::nullopt, {SamplerKind::Bootstrap, SamplerKind::Ppca}};

  int heavy_index() const { return heavy_dof >= 0 ? heavy_dof : n / 2; }
  int monitored_index() const { return monitored_dof >= 0 ? monitored_dof : 3 * n / 4; }
  int random_index() const { return random_dof >= 0 ? random_dof : n / 5 + 1; }
  void validate() const;
};

LinearSecondOrderSystem build_dynamic_system(const DynamicBenchmarkSpec& spec);

// d_x, v_x, a_x at the monitored DOF and v at the random DOF.
std::vector<MonitoredDof> dynamic_channels(const DynamicBenchmarkSpec& spec);
inline constexpr const char* kDynamicChannelNames[] = {"d_x", "v_x", "a_x", "v_r"};

struct DynamicReport {
  DynamicBenchmarkSpec spec;
  Eigen::Index rank = 0;
  Vector singular_values;
  Vector times;
  std::vector<Vector> truth;  // per channel
  std::vector<Vector> rom;    // per channel
  Trajectory hdm;             // full-order trajectory
  struct Method {
    SamplerKind kind = SamplerKind::Bootstrap;
    std::optional<BetaTrainingResult> training;
    int beta = 0;
    std::vector<PredictionBand> bands;  // per channel
    std::vector<Vector> means;
    std::vector<double> coverage;
    std::vector<double> average_width;
    double ensemble_seconds = 0.0;
    int degenerate_redraws = 0;
    nlohmann::json manifest;
    std::vector<Matrix> draws;  // per channel, n_draws x (n_steps + 1)
  };
  std::vector<Method> methods;
  std::vector<double> width_ratio;          // per channel, PPCA / bootstrap
  std::vector<double> average_width_ratio;  // per channel
  double hdm_seconds = 0.0;
  double rom_seconds = 0.0;
  double total_seconds = 0.0;

  const Method* method(SamplerKind kind) const;
};

struct DynamicPipeline {
  DynamicBenchmarkSpec spec;
  LinearSecondOrderSystem system;
  NewmarkConfig newmark;
  Trajectory hdm;
  Matrix snapshots;
  CompactSvd svd;
  TwoStageOperators operators;
  std::vector<MonitoredDof> channels;
  std::vector<Vector> truth;
  std::vector<Vector> rom;
  TrainingSet training;  // velocity at the monitored DOF
  double hdm_seconds = 0.0;
  double rom_seconds = 0.0;

  SubspaceModel model(SamplerKind kind, int beta) const;
  SromPipeline training_pipeline(SamplerKind kind) const;
  BetaTrainingResult train(SamplerKind kind) const;
  DynamicReport::Method predict(SamplerKind kind, int beta) const;
};

DynamicPipeline prepare_dynamic_pipeline(const DynamicBenchmarkSpec& spec);
DynamicReport run_dynamic_benchmark(const DynamicBenchmarkSpec& spec);

}  // namespace ssrom
