#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssrom/benchmarks.hpp"

namespace ssrom::report {

struct PlotSeries {
  std::string name;
  Vector y;
  std::string color;
  bool dashed = false;
};

struct PlotBand {
  std::string name;
  Vector lower;
  Vector upper;
  std::string color;
};

// Static SVG line chart: optional shaded bands underneath the lines.
void write_line_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                     const Vector& x, const std::vector<PlotSeries>& series, const std::vector<PlotBand>& bands = {});

nlohmann::json to_json(const StaticReport& report);
nlohmann::json to_json(const DynamicReport& report);
nlohmann::json to_json(const BetaTrainingResult& training);

// JSON manifests, CSV tables and SVG plots under out_dir (created if
// needed). With include_draws every per-draw QoI series is written as well
// (one CSV row per draw). Returns the written paths.
std::vector<std::filesystem::path> write_static_report(const std::filesystem::path& out_dir,
                                                       const StaticReport& report, bool include_draws = false);
std::vector<std::filesystem::path> write_dynamic_report(const std::filesystem::path& out_dir,
                                                        const DynamicReport& report, bool include_draws = false);

std::vector<std::filesystem::path> write_training_report(const std::filesystem::path& out_dir,
                                                         const std::string& prefix, SamplerKind kind,
                                                         const BetaTrainingResult& result);

void print_static_summary(std::ostream& out, const StaticReport& report);
void print_dynamic_summary(std::ostream& out, const DynamicReport& report);

}  // namespace ssrom::report
