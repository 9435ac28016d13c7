#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ssrom/benchmarks.hpp"
#include "ssrom/error.hpp"
#include "ssrom/report.hpp"
#include "test_util.hpp"

using namespace ssrom;
namespace fs = std::filesystem;

namespace {

StaticBenchmarkSpec small_static() {
  StaticBenchmarkSpec s;
  s.n = 120;
  s.n_snapshots = 30;
  s.srom.n_draws = 200;
  s.srom.n_mc_train = 60;
  s.srom.beta_max = 30;
  return s;
}

DynamicBenchmarkSpec small_dynamic() {
  DynamicBenchmarkSpec s;
  s.n = 40;
  s.n_steps = 200;
  s.k = 4;
  s.srom.n_draws = 40;
  s.srom.n_mc_train = 20;
  s.srom.beta_max = 16;
  return s;
}

// CSV body with every column whose header mentions "seconds" removed.
std::string csv_without_timings(const fs::path& path) {
  std::ifstream in(path);
  std::string line, out;
  std::vector<bool> keep;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header) {
      for (const auto& c : cells) keep.push_back(c.find("seconds") == std::string::npos);
      header = false;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i >= keep.size() || keep[i]) out += cells[i] + ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace

TEST(StaticSystem, EigenpairsAndOrthogonality) {
  const StaticProblem p = build_static_system(50);
  for (int j : {1, 2, 5}) {
    const double lambda = 4.0 * std::numbers::pi * std::numbers::pi * j * j;
    EXPECT_LT((p.stiffness * p.mode(j) - lambda * p.mode(j)).norm(), 1e-8 * lambda);
    EXPECT_EQ(p.mode(j)(0), 0.0);
    EXPECT_EQ(p.mode(j)(49), 0.0);
  }
  const Matrix s = dst1_matrix(48);
  EXPECT_LT((s.transpose() * s - Matrix::Identity(48, 48)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((p.stiffness - p.stiffness.transpose()).norm(), 1e-10);
  EXPECT_THROW(build_static_system(5), InputError);
}

TEST(StaticSystem, LoadNormalization) {
  const StaticProblem p = build_static_system(40);
  EXPECT_NEAR(p.load(0.3, 0.7).cwiseAbs().maxCoeff(), 1.0, 1e-15);
  EXPECT_TRUE(p.load(0.0, 0.0).isZero(0.0));
  const Vector x = p.solve(p.load(0.5, 0.5));
  EXPECT_EQ(x(0), 0.0);
  EXPECT_EQ(x(39), 0.0);
}

TEST(StaticSystem, ParametersFollowTheSeededLaw) {
  StaticBenchmarkSpec spec;
  spec.n_snapshots = 4000;
  const auto mu = sample_static_parameters(spec);
  ASSERT_EQ(mu.size(), 4000u);
  // Arcsine law: mean 1/2, variance 1/8.
  double mean = 0.0, sq = 0.0;
  for (const auto& [a, b] : mu) {
    EXPECT_TRUE(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0);
    mean += a;
    sq += a * a;
  }
  mean /= 4000.0;
  sq /= 4000.0;
  EXPECT_NEAR(mean, 0.5, 0.02);
  EXPECT_NEAR(sq - mean * mean, 0.125, 0.01);
  EXPECT_EQ(sample_static_parameters(spec), mu);
  spec.seed = 2;
  EXPECT_NE(sample_static_parameters(spec), mu);
}

TEST(DynamicSystem, StructureAndRank) {
  const DynamicBenchmarkSpec spec = small_dynamic();
  const LinearSecondOrderSystem s = build_dynamic_system(spec);
  EXPECT_EQ(Eigen::LLT<Matrix>(s.mass).info(), Eigen::Success);
  EXPECT_NEAR(s.mass(spec.heavy_index(), spec.heavy_index()), 100.0 * s.mass(0, 0), 1e-12);
  // Free-free chain: rigid translation is in the null space of K.
  EXPECT_LT((s.stiffness * Vector::Ones(spec.n)).norm(), 1e-9);
  const DynamicPipeline p = prepare_dynamic_pipeline(spec);
  EXPECT_GE(p.svd.rank(), spec.k);
  EXPECT_EQ(p.channels.size(), 4u);
}

TEST(DynamicSystem, ZeroImpulseGivesZeroResponse) {
  DynamicBenchmarkSpec spec = small_dynamic();
  spec.impulse_amplitude = 0.0;
  const LinearSecondOrderSystem s = build_dynamic_system(spec);
  const Trajectory t = newmark_integrate(s, NewmarkConfig{0.5, 0.25, spec.dt, spec.n_steps});
  EXPECT_TRUE(t.displacement.isZero(0.0));
}

TEST(StaticBenchmark, ReportIsCompleteAndDeterministic) {
  const StaticBenchmarkSpec spec = small_static();
  const StaticReport a = run_static_benchmark(spec);
  ASSERT_EQ(a.methods.size(), 2u);
  for (const auto& m : a.methods) {
    ASSERT_TRUE(m.training.has_value());
    EXPECT_GE(m.beta, spec.k);
    EXPECT_LE(m.beta, spec.srom.beta_max);
    EXPECT_GE(m.coverage, 0.0);
    EXPECT_LE(m.coverage, 1.0);
    EXPECT_EQ(m.draws.rows(), spec.srom.n_draws);
  }
  EXPECT_TRUE(a.width_ratio.has_value());

  const fs::path d1 = ssrom::testing::temp_path("static_det_1"), d2 = ssrom::testing::temp_path("static_det_2");
  fs::remove_all(d1);
  fs::remove_all(d2);
  const auto files = report::write_static_report(d1, a);
  report::write_static_report(d2, run_static_benchmark(spec));
  int compared = 0;
  for (const auto& f : files) {
    if (f.extension() != ".csv") continue;
    EXPECT_EQ(csv_without_timings(f), csv_without_timings(d2 / f.filename())) << f;
    ++compared;
  }
  EXPECT_GE(compared, 3);
  std::ifstream json(d1 / "static_report.json");
  EXPECT_TRUE(json.good());
}

TEST(StaticBenchmark, FixedBetaSkipsTraining) {
  StaticBenchmarkSpec spec = small_static();
  spec.srom.fixed_beta = 5;
  spec.srom.methods = {SamplerKind::Ppca};
  const StaticReport r = run_static_benchmark(spec);
  ASSERT_EQ(r.methods.size(), 1u);
  EXPECT_FALSE(r.methods[0].training.has_value());
  EXPECT_EQ(r.methods[0].beta, 5);
  EXPECT_FALSE(r.width_ratio.has_value());
}

// The comparison is reported only; the Gaussian law is closer to the
// symmetric case the bootstrap mimics.
TEST(StaticBenchmark, GaussianOverrideIsReported) {
  StaticBenchmarkSpec spec = small_static();
  spec.distribution = ParameterDistribution::Gaussian;
  const StaticReport g = run_static_benchmark(spec);
  const StaticReport b = run_static_benchmark(small_static());
  ASSERT_TRUE(g.width_ratio && b.width_ratio);
  RecordProperty("gaussian_width_ratio", std::to_string(*g.width_ratio));
  RecordProperty("beta_width_ratio", std::to_string(*b.width_ratio));
  std::cout << "width ratio: gaussian " << *g.width_ratio << ", beta " << *b.width_ratio << "\n";
  EXPECT_GT(*g.width_ratio, 0.0);
}

TEST(DynamicBenchmark, DeterministicWithFiniteBands) {
  const DynamicBenchmarkSpec spec = small_dynamic();
  const DynamicReport a = run_dynamic_benchmark(spec);
  const DynamicReport b = run_dynamic_benchmark(spec);
  ASSERT_EQ(a.methods.size(), 2u);
  for (std::size_t m = 0; m < a.methods.size(); ++m) {
    EXPECT_EQ(a.methods[m].beta, b.methods[m].beta);
    ASSERT_EQ(a.methods[m].bands.size(), 4u);
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_EQ(a.methods[m].bands[c].lower, b.methods[m].bands[c].lower);
      EXPECT_TRUE(a.methods[m].bands[c].upper.allFinite());
      EXPECT_EQ(a.methods[m].bands[c].size(), spec.n_steps + 1);
    }
  }
  EXPECT_EQ(a.width_ratio.size(), 4u);
  const fs::path dir = ssrom::testing::temp_path("dynamic_out");
  fs::remove_all(dir);
  const auto files = report::write_dynamic_report(dir, a);
  EXPECT_TRUE(fs::exists(dir / "dynamic_report.json"));
  EXPECT_TRUE(fs::exists(dir / "dynamic_table.csv"));
  std::ifstream json(dir / "dynamic_report.json");
  std::stringstream ss;
  ss << json.rdbuf();
  EXPECT_NE(ss.str().find("synthetic analogue"), std::string::npos);
}

TEST(Specs, ValidationRejectsNonsense) {
  StaticBenchmarkSpec s;
  s.k = 60;
  EXPECT_THROW(s.validate(), ConfigError);
  DynamicBenchmarkSpec d;
  d.n = 10;
  EXPECT_THROW(d.validate(), ConfigError);
  d = DynamicBenchmarkSpec{};
  d.srom.n_draws = 5;
  EXPECT_THROW(d.validate(), ConfigError);
}
