#include <gtest/gtest.h>

#include <sstream>

#include "ssrom/config.hpp"
#include "ssrom/error.hpp"

using namespace ssrom;

namespace {

BenchmarkConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST(Config, EmptyFileGivesDefaults) {
  const BenchmarkConfig c = parse("");
  EXPECT_TRUE(c.static_spec == StaticBenchmarkSpec{});
  EXPECT_TRUE(c.dynamic_spec == DynamicBenchmarkSpec{});
}

TEST(Config, DefaultsRoundTrip) {
  const BenchmarkConfig c;
  const BenchmarkConfig back = parse(config_to_string(c));
  EXPECT_TRUE(back.static_spec == c.static_spec);
  EXPECT_TRUE(back.dynamic_spec == c.dynamic_spec);
}

TEST(Config, NonDefaultValuesRoundTripExactly) {
  BenchmarkConfig c;
  c.static_spec.n = 321;
  c.static_spec.gaussian_std = 0.1 + 1e-17;
  c.static_spec.distribution = ParameterDistribution::Gaussian;
  c.static_spec.test_mu1 = 1.0 / 3.0;
  c.static_spec.center_snapshots = true;
  c.static_spec.seed = 18446744073709551615ULL;
  c.static_spec.srom.fixed_beta = 7;
  c.static_spec.srom.methods = {SamplerKind::Ppca};
  c.dynamic_spec.rayleigh_beta = 6.366e-6;
  c.dynamic_spec.dt = 0.1 / 3.0;
  c.dynamic_spec.heavy_dof = 17;
  c.dynamic_spec.center_snapshots = false;
  c.dynamic_spec.srom.level = 0.9;
  const BenchmarkConfig back = parse(config_to_string(c));
  EXPECT_TRUE(back.static_spec == c.static_spec);
  EXPECT_TRUE(back.dynamic_spec == c.dynamic_spec);
  EXPECT_EQ(config_to_string(back), config_to_string(c));
}

TEST(Config, ParsesDocumentedExample) {
  const BenchmarkConfig c = parse(
      "[static]\nn = 200\ndistribution = gaussian\nmethods = bootstrap,ppca\nbeta = auto\n"
      "[dynamic]\n; comment\nn_draws = 100\nbeta = 12\nmethods = ppca\n");
  EXPECT_EQ(c.static_spec.n, 200);
  EXPECT_EQ(c.static_spec.distribution, ParameterDistribution::Gaussian);
  EXPECT_EQ(c.static_spec.srom.methods.size(), 2u);
  EXPECT_FALSE(c.static_spec.srom.fixed_beta.has_value());
  EXPECT_EQ(c.dynamic_spec.srom.n_draws, 100);
  EXPECT_EQ(c.dynamic_spec.srom.fixed_beta, 12);
  EXPECT_EQ(c.dynamic_spec.srom.methods, std::vector<SamplerKind>{SamplerKind::Ppca});
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse("[static]\ncolour = red\n"), ConfigError);
  EXPECT_THROW(parse("[elsewhere]\nn = 3\n"), ConfigError);
  EXPECT_THROW(parse("[static]\nn = 12x\n"), ConfigError);
  EXPECT_THROW(parse("[static]\nn = 3\n"), ConfigError);
  EXPECT_THROW(parse("[static]\nk = 0\n"), ConfigError);
  EXPECT_THROW(parse("[static]\nmethods = kriging\n"), ConfigError);
  EXPECT_THROW(parse("[static]\ncenter_snapshots = yes\n"), ConfigError);
  EXPECT_THROW(parse("[dynamic]\ndt = -1\n"), ConfigError);
  EXPECT_THROW(parse("[dynamic]\nmonitored_dof = 5000\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/ssrom.ini"), ConfigError);
}

TEST(Config, ConfigErrorIsAnInputError) {
  try {
    parse("[static]\nunknown = 1\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown"), std::string::npos);
  }
}
