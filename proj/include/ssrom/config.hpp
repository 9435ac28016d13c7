#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ssrom/benchmarks.hpp"

namespace ssrom {

// Both benchmark specs. On disk this is an INI file with a [static] and a
// [dynamic] section whose keys are the spec field names, for example
//
//   [static]
//   n = 1000
//   distribution = beta
//   methods = bootstrap,ppca
//   beta = auto
//
// Missing keys keep their defaults; unknown keys are rejected.
struct BenchmarkConfig {
  StaticBenchmarkSpec static_spec;
  DynamicBenchmarkSpec dynamic_spec;
};

BenchmarkConfig parse_config(std::istream& in);
BenchmarkConfig load_config(const std::filesystem::path& path);

void write_config(std::ostream& out, const BenchmarkConfig& config);
std::string config_to_string(const BenchmarkConfig& config);

bool operator==(const SromSettings& a, const SromSettings& b);
bool operator==(const StaticBenchmarkSpec& a, const StaticBenchmarkSpec& b);
bool operator==(const DynamicBenchmarkSpec& a, const DynamicBenchmarkSpec& b);

}  // namespace ssrom
