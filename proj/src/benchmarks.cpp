#include "ssrom/benchmarks.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "ssrom/error.hpp"

namespace ssrom {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream ids under the benchmark seed.
constexpr std::uint64_t kParameterStream = 0x706172616d73ULL;
constexpr std::uint64_t kStiffnessStream = 0x737072696e67ULL;
constexpr std::uint64_t kTrainingStream = 0x747261696eULL;
constexpr std::uint64_t kEnsembleStream = 0x656e73ULL;

std::uint64_t method_seed(std::uint64_t seed, std::uint64_t stream, SamplerKind kind) {
  return derive_seed(seed, stream, kind == SamplerKind::Bootstrap ? 1 : 2);
}

void validate_srom(const SromSettings& s, int k) {
  if (s.n_draws < 1) throw ConfigError("n_draws must be positive");
  if (s.n_mc_train < 2) throw ConfigError("n_mc_train must be at least 2");
  if (s.beta_max < k) throw ConfigError("beta_max must be at least k");
  if (!(s.level > 0.0 && s.level < 1.0)) throw ConfigError("level must lie in (0,1)");
  if (s.n_draws < std::ceil(1.0 / (1.0 - s.level) - 1e-9)) {
    throw ConfigError("n_draws = " + std::to_string(s.n_draws) + " is too small for level " + std::to_string(s.level));
  }
  if (s.fixed_beta && *s.fixed_beta < k) throw ConfigError("beta must be at least k");
  if (s.methods.empty()) throw ConfigError("at least one sampler is required");
}

BetaSearch beta_search(const SromSettings& s, int k, std::uint64_t seed) {
  return BetaSearch{k, s.beta_max, s.n_mc_train, seed};
}

// Training adapter: sample a basis, reduce, solve.
// An empty channel keeps every output of the solver.
SromPipeline make_pipeline(TwoStageOperators ops, const SubspaceModel& base, DrawSolver solver,
                           std::optional<std::size_t> channel) {
  return [ops = std::move(ops), base, solver = std::move(solver), channel](int beta, std::uint64_t draw_seed) {
    const SubspaceModel model = base.with_concentration(beta);
    const SampledBasis sample = sample_with_redraw(model, draw_seed, 0);
    DrawResult result = solver(ops.reduce(sample.coordinates));
    if (!channel) return std::move(result.qoi);
    return std::vector<Vector>{std::move(result.qoi.at(*channel))};
  };
}

}  // namespace

std::string_view to_string(ParameterDistribution d) noexcept {
  return d == ParameterDistribution::Beta ? "beta" : "gaussian";
}

ParameterDistribution parse_parameter_distribution(std::string_view text) {
  if (text == "beta") return ParameterDistribution::Beta;
  if (text == "gaussian") return ParameterDistribution::Gaussian;
  throw ConfigError("unknown parameter distribution '" + std::string(text) + "' (expected beta or gaussian)");
}

// ---- static ----------------------------------------------------------------

void StaticBenchmarkSpec::validate() const {
  if (n < 6) throw ConfigError("static: n must be at least 6");
  if (n_snapshots < 2) throw ConfigError("static: n_snapshots must be at least 2");
  if (k < 1 || k > n_snapshots) throw ConfigError("static: k must lie in [1, n_snapshots]");
  if (!(beta_a > 0.0 && beta_b > 0.0)) throw ConfigError("static: Beta parameters must be positive");
  if (!(gaussian_std > 0.0)) throw ConfigError("static: gaussian_std must be positive");
  validate_srom(srom, k);
}

Matrix dst1_matrix(int order) {
  const double scale = std::sqrt(2.0 / (order + 1));
  Matrix s(order, order);
  for (int j = 1; j <= order; ++j) {
    for (int k = 1; k <= order; ++k) {
      s(k - 1, j - 1) = scale * std::sin(static_cast<double>(j) * k * std::numbers::pi / (order + 1));
    }
  }
  return s;
}

StaticProblem build_static_system(int n) {
  if (n < 6) throw InputError("build_static_system: n must be at least 6");
  StaticProblem p;
  p.n = n;
  p.modes = Matrix::Zero(n, n - 2);
  p.modes.middleRows(1, n - 2) = dst1_matrix(n - 2);
  p.eigenvalues.resize(n - 2);
  for (int j = 1; j <= n - 2; ++j) p.eigenvalues(j - 1) = 4.0 * std::numbers::pi * std::numbers::pi * j * j;
  p.stiffness = p.modes * p.eigenvalues.asDiagonal() * p.modes.transpose();
  p.stiffness = 0.5 * (p.stiffness + p.stiffness.transpose()).eval();
  p.constraints = Matrix::Zero(n, 2);
  p.constraints(0, 0) = 1.0;
  p.constraints(n - 1, 1) = 1.0;
  return p;
}

Vector StaticProblem::load(double mu1, double mu2) const {
  const Vector g = mu1 * (modes.col(1) + modes.col(2)) + mu2 * (modes.col(3) + modes.col(4));
  const double inf = g.cwiseAbs().maxCoeff();
  if (inf == 0.0) {
    std::cerr << "static benchmark: g(mu) = 0 at mu = (" << mu1 << ", " << mu2 << "); using zero load\n";
    return Vector::Zero(n);
  }
  return g / inf;
}

Vector StaticProblem::solve(const Vector& force) const { return solve_static(stiffness, force, constraints); }

std::vector<std::pair<double, double>> sample_static_parameters(const StaticBenchmarkSpec& spec) {
  Rng rng = make_rng(spec.seed, kParameterStream);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto draw = [&] {
    double u = uniform(rng);
    while (u <= 0.0) u = uniform(rng);
    if (spec.distribution == ParameterDistribution::Beta) {
      return boost::math::ibeta_inv(spec.beta_a, spec.beta_b, u);
    }
    return spec.gaussian_mean + spec.gaussian_std * std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0);
  };
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(spec.n_snapshots));
  for (int j = 0; j < spec.n_snapshots; ++j) {
    const double mu1 = draw();
    const double mu2 = draw();
    out.emplace_back(mu1, mu2);
  }
  return out;
}

const MethodReport* StaticReport::method(SamplerKind kind) const {
  for (const auto& m : methods) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

SubspaceModel StaticPipeline::model(SamplerKind kind, int beta) const {
  return SubspaceModel(svd, snapshots.cols(), spec.k, beta, kind);
}

SromPipeline StaticPipeline::training_pipeline(SamplerKind kind) const {
  return make_pipeline(operators, model(kind, spec.k), make_static_solver(operators, training_loads),
                       std::nullopt);
}

BetaTrainingResult StaticPipeline::train(SamplerKind kind) const {
  return optimize_beta(training, training_pipeline(kind),
                       beta_search(spec.srom, spec.k, method_seed(spec.seed, kTrainingStream, kind)));
}

MethodReport StaticPipeline::predict(SamplerKind kind, int beta) const {
  const auto start = Clock::now();
  EnsembleOptions options;
  options.n_draws = spec.srom.n_draws;
  options.seed = method_seed(spec.seed, kEnsembleStream, kind);
  const SromEnsemble ensemble =
      build_ensemble(operators, model(kind, beta), make_static_solver(operators, {test_load}), options);
  MethodReport r;
  r.draws = ensemble.qoi_matrix(0);
  const Matrix& draws = r.draws;
  r.manifest = ensemble.manifest();
  r.kind = kind;
  r.beta = beta;
  r.band = empirical_band(draws, spec.srom.level);
  r.ensemble_mean = ensemble_mean(draws);
  r.coverage = coverage(r.band, truth);
  r.average_width = average_width(r.band);
  r.degenerate_redraws = ensemble.degenerate_redraws;
  r.ensemble_seconds = seconds_since(start);
  return r;
}

StaticPipeline prepare_static_pipeline(const StaticBenchmarkSpec& spec) {
  spec.validate();
  StaticPipeline p;
  p.spec = spec;
  p.problem = build_static_system(spec.n);
  p.parameters = sample_static_parameters(spec);

  p.snapshots.resize(spec.n, spec.n_snapshots);
  for (int j = 0; j < spec.n_snapshots; ++j) {
    p.training_loads.push_back(p.problem.load(p.parameters[j].first, p.parameters[j].second));
    p.snapshots.col(j) = p.problem.solve(p.training_loads.back());
  }
  p.svd = compact_svd(spec.center_snapshots ? center(p.snapshots).data() : p.snapshots);
  if (p.svd.rank() < spec.k) {
    throw NumericalError("static: snapshot rank " + std::to_string(p.svd.rank()) + " is below k");
  }

  p.test_load = p.problem.load(spec.test_mu1, spec.test_mu2);
  p.truth = p.problem.solve(p.test_load);

  LinearSecondOrderSystem system = make_static_system(p.problem.stiffness, p.test_load, p.problem.constraints);
  p.operators = two_stage_reduce(system, p.svd);

  // Deterministic ROM on V_k for the training cases and the test case.
  const ReducedSystem rom = p.operators.reduce(leading_coordinates(p.svd.rank(), spec.k));
  const DrawSolver training_solver = make_static_solver(p.operators, p.training_loads);
  const DrawResult reference = training_solver(rom);
  p.training.truth_outputs.reserve(p.training_loads.size());
  for (int j = 0; j < spec.n_snapshots; ++j) p.training.truth_outputs.push_back(p.snapshots.col(j));
  p.training.reference_outputs = reference.qoi;
  p.training.dt = 1.0;
  p.rom = make_static_solver(p.operators, {p.test_load})(rom).qoi.front();
  return p;
}

StaticReport run_static_benchmark(const StaticBenchmarkSpec& spec) {
  const auto start = Clock::now();
  const StaticPipeline p = prepare_static_pipeline(spec);
  StaticReport report;
  report.spec = spec;
  report.rank = p.svd.rank();
  report.singular_values = p.svd.singular_values;
  report.truth = p.truth;
  report.rom = p.rom;
  report.rom_relative_error = (p.rom - p.truth).norm() / p.truth.norm();
  report.setup_seconds = seconds_since(start);

  for (SamplerKind kind : spec.srom.methods) {
    std::optional<BetaTrainingResult> training;
    int beta = spec.srom.fixed_beta.value_or(0);
    if (!spec.srom.fixed_beta) {
      training = p.train(kind);
      beta = training->beta;
    }
    MethodReport m = p.predict(kind, beta);
    m.training = std::move(training);
    report.methods.push_back(std::move(m));
  }
  const auto* boot = report.method(SamplerKind::Bootstrap);
  const auto* ppca = report.method(SamplerKind::Ppca);
  if (boot && ppca) {
    report.width_ratio = width_ratio(ppca->band, boot->band);
    report.average_width_ratio = average_width_ratio(ppca->band, boot->band);
  }
  report.total_seconds = seconds_since(start);
  return report;
}

// ---- dynamic ---------------------------------------------------------------

void DynamicBenchmarkSpec::validate() const {
  if (n < 20) throw ConfigError("dynamic: n must be at least 20");
  if (!(dt > 0.0)) throw ConfigError("dynamic: dt must be positive");
  if (n_steps < 1) throw ConfigError("dynamic: n_steps must be positive");
  if (snapshot_stride < 1) throw ConfigError("dynamic: snapshot_stride must be positive");
  if (k < 1 || k > n) throw ConfigError("dynamic: k must lie in [1, n]");
  if (!(rayleigh_beta >= 0.0)) throw ConfigError("dynamic: rayleigh_beta must be non-negative");
  if (!(unit_mass > 0.0) || !(heavy_mass_factor > 0.0)) throw ConfigError("dynamic: masses must be positive");
  if (!(spring_stiffness > 0.0) || !(stiffness_variation >= 0.0)) {
    throw ConfigError("dynamic: spring stiffness must be positive");
  }
  if (!(impulse_duration > 0.0)) throw ConfigError("dynamic: impulse_duration must be positive");
  for (int dof : {heavy_index(), monitored_index(), random_index()}) {
    if (dof < 0 || dof >= n) throw ConfigError("dynamic: DOF index " + std::to_string(dof) + " out of range");
  }
  validate_srom(srom, k);
}

LinearSecondOrderSystem build_dynamic_system(const DynamicBenchmarkSpec& spec) {
  spec.validate();
  const int n = spec.n;
  LinearSecondOrderSystem s;
  s.mass = Matrix::Zero(n, n);
  s.mass.diagonal().setConstant(spec.unit_mass);
  s.mass(spec.heavy_index(), spec.heavy_index()) *= spec.heavy_mass_factor;

  Rng rng = make_rng(spec.seed, kStiffnessStream);
  std::uniform_real_distribution<double> jitter(-spec.stiffness_variation, spec.stiffness_variation);
  s.stiffness = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double k = spec.spring_stiffness * std::exp(spec.stiffness_variation > 0 ? jitter(rng) : 0.0);
    s.stiffness(i, i) += k;
    s.stiffness(i + 1, i + 1) += k;
    s.stiffness(i, i + 1) -= k;
    s.stiffness(i + 1, i) -= k;
  }
  s.damping = rayleigh_damping(s.stiffness, spec.rayleigh_beta);

  Vector shape = Vector::Zero(n);
  shape(spec.heavy_index()) = spec.impulse_amplitude;
  const double duration = spec.impulse_duration;
  s.force.push_back(ForceTerm{shape, [duration](double t) {
                                return t >= 0.0 && t <= duration ? std::sin(std::numbers::pi * t / duration) : 0.0;
                              }});
  s.validate();
  return s;
}

std::vector<MonitoredDof> dynamic_channels(const DynamicBenchmarkSpec& spec) {
  const Eigen::Index c = spec.monitored_index();
  return {{Quantity::Displacement, c},
          {Quantity::Velocity, c},
          {Quantity::Acceleration, c},
          {Quantity::Velocity, spec.random_index()}};
}

const DynamicReport::Method* DynamicReport::method(SamplerKind kind) const {
  for (const auto& m : methods) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

SubspaceModel DynamicPipeline::model(SamplerKind kind, int beta) const {
  return SubspaceModel(svd, snapshots.cols(), spec.k, beta, kind);
}

SromPipeline DynamicPipeline::training_pipeline(SamplerKind kind) const {
  return make_pipeline(operators, model(kind, spec.k), make_dynamic_solver(newmark, channels), 1);
}

BetaTrainingResult DynamicPipeline::train(SamplerKind kind) const {
  return optimize_beta(training, training_pipeline(kind),
                       beta_search(spec.srom, spec.k, method_seed(spec.seed, kTrainingStream, kind)));
}

DynamicReport::Method DynamicPipeline::predict(SamplerKind kind, int beta) const {
  const auto start = Clock::now();
  EnsembleOptions options;
  options.n_draws = spec.srom.n_draws;
  options.seed = method_seed(spec.seed, kEnsembleStream, kind);
  const SromEnsemble ensemble =
      build_ensemble(operators, model(kind, beta), make_dynamic_solver(newmark, channels), options);
  DynamicReport::Method m;
  m.kind = kind;
  m.beta = beta;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    m.draws.push_back(ensemble.qoi_matrix(c));
    const Matrix& draws = m.draws.back();
    m.bands.push_back(empirical_band(draws, spec.srom.level));
    m.means.push_back(ensemble_mean(draws));
    m.coverage.push_back(coverage(m.bands.back(), truth[c]));
    m.average_width.push_back(average_width(m.bands.back()));
  }
  m.degenerate_redraws = ensemble.degenerate_redraws;
  m.manifest = ensemble.manifest();
  m.ensemble_seconds = seconds_since(start);
  return m;
}

DynamicPipeline prepare_dynamic_pipeline(const DynamicBenchmarkSpec& spec) {
  spec.validate();
  DynamicPipeline p;
  p.spec = spec;
  p.system = build_dynamic_system(spec);
  p.newmark = NewmarkConfig{0.5, 0.25, spec.dt, spec.n_steps};
  p.channels = dynamic_channels(spec);

  auto start = Clock::now();
  p.hdm = newmark_integrate(p.system, p.newmark);
  p.hdm_seconds = seconds_since(start);

  const Eigen::Index m = spec.n_steps / spec.snapshot_stride + 1;
  p.snapshots.resize(spec.n, m);
  for (Eigen::Index j = 0; j < m; ++j) p.snapshots.col(j) = p.hdm.displacement.col(j * spec.snapshot_stride);
  p.svd = compact_svd(spec.center_snapshots ? center(p.snapshots).data() : p.snapshots);
  if (p.svd.rank() < spec.k) {
    throw NumericalError("dynamic: snapshot rank " + std::to_string(p.svd.rank()) + " is below k");
  }
  p.operators = two_stage_reduce(p.system, p.svd);
  p.truth = monitor(p.hdm, p.channels);

  start = Clock::now();
  const ReducedSystem rom = p.operators.reduce(leading_coordinates(p.svd.rank(), spec.k));
  p.rom = make_dynamic_solver(p.newmark, p.channels)(rom).qoi;
  p.rom_seconds = seconds_since(start);

  p.training.truth_outputs = {p.truth[1]};
  p.training.reference_outputs = {p.rom[1]};
  p.training.dt = spec.dt;
  return p;
}

DynamicReport run_dynamic_benchmark(const DynamicBenchmarkSpec& spec) {
  const auto start = Clock::now();
  const DynamicPipeline p = prepare_dynamic_pipeline(spec);
  DynamicReport report;
  report.spec = spec;
  report.rank = p.svd.rank();
  report.singular_values = p.svd.singular_values;
  report.times = p.hdm.times;
  report.hdm = p.hdm;
  report.truth = p.truth;
  report.rom = p.rom;
  report.hdm_seconds = p.hdm_seconds;
  report.rom_seconds = p.rom_seconds;

  for (SamplerKind kind : spec.srom.methods) {
    std::optional<BetaTrainingResult> training;
    int beta = spec.srom.fixed_beta.value_or(0);
    if (!spec.srom.fixed_beta) {
      training = p.train(kind);
      beta = training->beta;
    }
    DynamicReport::Method m = p.predict(kind, beta);
    m.training = std::move(training);
    report.methods.push_back(std::move(m));
  }
  const auto* boot = report.method(SamplerKind::Bootstrap);
  const auto* ppca = report.method(SamplerKind::Ppca);
  if (boot && ppca) {
    for (std::size_t c = 0; c < p.channels.size(); ++c) {
      report.width_ratio.push_back(width_ratio(ppca->bands[c], boot->bands[c]));
      report.average_width_ratio.push_back(average_width_ratio(ppca->bands[c], boot->bands[c]));
    }
  }
  report.total_seconds = seconds_since(start);
  return report;
}

}  // namespace ssrom
