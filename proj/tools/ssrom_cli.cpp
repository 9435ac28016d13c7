// ssrom: stochastic-subspace ROM benchmarks and subspace sampling.
//
//   ssrom static run|train   [--config FILE] [--seed S] [--out-dir DIR] [--method M] [--draws N] [--save-draws]
//   ssrom dynamic run|train  [same options]
//   ssrom sample-subspace --snapshots FILE --k K --beta B [--method M] [--draws N] [--seed S] [--out-dir DIR]
//                         [--no-center] [--mtx]
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ssrom/benchmarks.hpp"
#include "ssrom/config.hpp"
#include "ssrom/error.hpp"
#include "ssrom/linalg.hpp"
#include "ssrom/matrix_io.hpp"
#include "ssrom/report.hpp"
#include "ssrom/rng.hpp"
#include "ssrom/stochastic_subspace.hpp"

namespace fs = std::filesystem;
using namespace ssrom;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::optional<std::string> method;
  std::optional<int> draws;
  bool save_draws = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
  app->add_option("--method", o.method, "bootstrap or ppca (default: both)");
  app->add_option("--draws", o.draws, "SROM ensemble size");
  app->add_flag("--save-draws", o.save_draws, "also write every per-draw QoI series (run only)");
}

BenchmarkConfig load(const CommonOptions& o) { return o.config.empty() ? BenchmarkConfig{} : load_config(o.config); }

template <class Spec>
void apply(const CommonOptions& o, Spec& spec) {
  if (o.seed) spec.seed = *o.seed;
  if (o.method) spec.srom.methods = {parse_sampler_kind(*o.method)};
  if (o.draws) spec.srom.n_draws = *o.draws;
  spec.validate();
}

void print_training(const std::string& label, SamplerKind kind, const BetaTrainingResult& r) {
  std::cout << label << ' ' << to_string(kind) << ": beta*=" << r.beta << " objective=" << r.best.mean
            << " (se " << r.best.std_error << ") evaluations=" << r.trace.size() << " time=" << r.seconds << " s\n";
}

int run_static(const CommonOptions& o, bool train_only) {
  BenchmarkConfig cfg = load(o);
  apply(o, cfg.static_spec);
  if (train_only) {
    const StaticPipeline pipeline = prepare_static_pipeline(cfg.static_spec);
    nlohmann::json out = nlohmann::json::array();
    for (SamplerKind kind : cfg.static_spec.srom.methods) {
      const BetaTrainingResult r = pipeline.train(kind);
      print_training("static", kind, r);
      for (const auto& p : report::write_training_report(o.out_dir, "static", kind, r)) std::cout << "  wrote " << p.string() << "\n";
      nlohmann::json j = report::to_json(r);
      j["sampler"] = std::string(to_string(kind));
      out.push_back(std::move(j));
    }
    std::ofstream(fs::path(o.out_dir) / "static_training.json") << out.dump(2) << '\n';
    return 0;
  }
  const StaticReport rep = run_static_benchmark(cfg.static_spec);
  report::print_static_summary(std::cout, rep);
  for (const auto& p : report::write_static_report(o.out_dir, rep, o.save_draws)) std::cout << "  wrote " << p.string() << "\n";
  return 0;
}

int run_dynamic(const CommonOptions& o, bool train_only) {
  BenchmarkConfig cfg = load(o);
  apply(o, cfg.dynamic_spec);
  if (train_only) {
    const DynamicPipeline pipeline = prepare_dynamic_pipeline(cfg.dynamic_spec);
    nlohmann::json out = nlohmann::json::array();
    for (SamplerKind kind : cfg.dynamic_spec.srom.methods) {
      const BetaTrainingResult r = pipeline.train(kind);
      print_training("dynamic (synthetic analogue)", kind, r);
      for (const auto& p : report::write_training_report(o.out_dir, "dynamic", kind, r)) std::cout << "  wrote " << p.string() << "\n";
      nlohmann::json j = report::to_json(r);
      j["sampler"] = std::string(to_string(kind));
      out.push_back(std::move(j));
    }
    std::ofstream(fs::path(o.out_dir) / "dynamic_training.json") << out.dump(2) << '\n';
    return 0;
  }
  const DynamicReport rep = run_dynamic_benchmark(cfg.dynamic_spec);
  report::print_dynamic_summary(std::cout, rep);
  for (const auto& p : report::write_dynamic_report(o.out_dir, rep, o.save_draws)) std::cout << "  wrote " << p.string() << "\n";
  return 0;
}

struct SampleOptions {
  std::string snapshots;
  int k = 1;
  int beta = 0;
  std::string method = "bootstrap";
  int draws = 10;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  bool mtx = false;
  bool no_center = false;
};

int run_sample(const SampleOptions& o) {
  const Matrix raw = io::read_matrix(o.snapshots);
  const SnapshotMatrix snaps = o.no_center ? SnapshotMatrix(raw, Vector::Zero(raw.rows()), false) : center(raw);
  const CompactSvd svd = compact_svd(snaps.data());
  const SubspaceModel model(svd, snaps.count(), o.k, o.beta, parse_sampler_kind(o.method));
  fs::create_directories(o.out_dir);

  nlohmann::json draws = nlohmann::json::array();
  const SubspaceBasis pod = principal_subspace(snaps.data(), o.k);
  const std::string ext = o.mtx ? ".mtx" : ".csv";
  for (int i = 0; i < o.draws; ++i) {
    const SampledBasis s = sample_with_redraw(model, o.seed, static_cast<std::uint64_t>(i));
    const SubspaceBasis w = lift_to_ambient(model, s.coordinates);
    const fs::path file = fs::path(o.out_dir) / ("basis_" + std::to_string(i) + ext);
    io::write_matrix(file, w.basis());
    draws.push_back({{"draw", i},
                     {"file", file.filename().string()},
                     {"seed", s.seed},
                     {"degenerate_attempts", s.degenerate_attempts},
                     {"largest_angle_to_pod", largest_principal_angle(w, pod)}});
  }
  nlohmann::json summary = model.summary();
  summary["snapshots"] = o.snapshots;
  summary["seed"] = o.seed;
  summary["centered"] = snaps.centered();
  summary["draws"] = draws;
  std::ofstream(fs::path(o.out_dir) / "model_summary.json") << summary.dump(2) << '\n';
  std::cout << "sampled " << o.draws << " " << o.method << " bases (n=" << snaps.state_dim() << ", r=" << svd.rank()
            << ", k=" << o.k << ", beta=" << model.concentration() << ") into " << o.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-subspace reduced-order model benchmarks"};
  app.require_subcommand(1);

  CommonOptions static_opts, dynamic_opts;
  CLI::App* stat = app.add_subcommand("static", "parametric linear static benchmark");
  stat->require_subcommand(1);
  CLI::App* stat_run = stat->add_subcommand("run", "train beta, build ensembles, report bands");
  CLI::App* stat_train = stat->add_subcommand("train", "train beta only");
  add_common(stat_run, static_opts);
  add_common(stat_train, static_opts);

  CLI::App* dyn = app.add_subcommand("dynamic", "synthetic linear dynamics benchmark");
  dyn->require_subcommand(1);
  CLI::App* dyn_run = dyn->add_subcommand("run", "train beta, build ensembles, report bands");
  CLI::App* dyn_train = dyn->add_subcommand("train", "train beta only");
  add_common(dyn_run, dynamic_opts);
  add_common(dyn_train, dynamic_opts);

  SampleOptions sample_opts;
  CLI::App* sample = app.add_subcommand("sample-subspace", "draw stochastic subspaces from a snapshot file");
  sample->add_option("--snapshots", sample_opts.snapshots, "snapshot matrix (.csv or .mtx), one column per sample")
      ->required()
      ->check(CLI::ExistingFile);
  sample->add_option("--k", sample_opts.k, "subspace dimension")->required();
  sample->add_option("--beta", sample_opts.beta, "concentration (default: number of snapshots)");
  sample->add_option("--method", sample_opts.method, "bootstrap or ppca")->capture_default_str();
  sample->add_option("--draws", sample_opts.draws, "number of bases")->capture_default_str();
  sample->add_option("--seed", sample_opts.seed, "seed")->capture_default_str();
  sample->add_option("--out-dir", sample_opts.out_dir, "output directory")->capture_default_str();
  sample->add_flag("--mtx", sample_opts.mtx, "write bases as Matrix Market instead of CSV");
  sample->add_flag("--no-center", sample_opts.no_center, "use the raw snapshots instead of removing the mean");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (stat_run->parsed()) return run_static(static_opts, false);
    if (stat_train->parsed()) return run_static(static_opts, true);
    if (dyn_run->parsed()) return run_dynamic(dynamic_opts, false);
    if (dyn_train->parsed()) return run_dynamic(dynamic_opts, true);
    if (sample->parsed()) {
      if (sample_opts.beta == 0) {
        sample_opts.beta = static_cast<int>(io::read_matrix(sample_opts.snapshots).cols());
      }
      return run_sample(sample_opts);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
