#include "ssrom/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ssrom/config.hpp"
#include "ssrom/error.hpp"
#include "ssrom/matrix_io.hpp"

namespace ssrom::report {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSyntheticLabel = "synthetic analogue";

// Values reported for the original problems; printed beside ours for
// qualitative comparison only.
struct ReferenceRow {
  const char* channel;
  double ppca_coverage, ppca_width, bootstrap_coverage, bootstrap_width, width_ratio;
};
constexpr ReferenceRow kDynamicReference[] = {
    {"d_x", 0.9611, 3.17, 0.9708, 2.69, 1.37},
    {"v_x", 0.9334, 1.18, 0.9558, 1.11, 1.19},
    {"a_x", 0.8414, 7.26, 0.8706, 7.22, 1.04},
    {"v_r", 0.9342, 1.41, 0.9663, 1.51, 1.11},
};

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string fmt(double v) { return io::format_double(v); }

std::string method_name(SamplerKind kind) { return std::string(to_string(kind)); }

const char* method_color(SamplerKind kind) { return kind == SamplerKind::Bootstrap ? "#1f77b4" : "#d62728"; }

std::string svg_number(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

// Columns of equal length as an RFC-4180 table.
void write_columns(const fs::path& path, const std::vector<std::string>& names, const std::vector<Vector>& cols) {
  std::vector<std::vector<std::string>> rows{names};
  const Eigen::Index n = cols.empty() ? 0 : cols.front().size();
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::string> row;
    for (const auto& c : cols) row.push_back(fmt(c(i)));
    rows.push_back(std::move(row));
  }
  io::write_csv_rows(path, rows);
}

}  // namespace

void write_line_plot(const fs::path& path, const std::string& title, const std::string& x_label, const Vector& x,
                     const std::vector<PlotSeries>& series, const std::vector<PlotBand>& bands) {
  constexpr double W = 800, H = 480, L = 70, R = 20, T = 40, B = 50;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  auto extend = [&](const Vector& y) {
    ymin = std::min(ymin, y.minCoeff());
    ymax = std::max(ymax, y.maxCoeff());
  };
  for (const auto& s : series) extend(s.y);
  for (const auto& b : bands) {
    extend(b.lower);
    extend(b.upper);
  }
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double xmin = x.minCoeff();
  const double xmax = x.maxCoeff() > xmin ? x.maxCoeff() : xmin + 1.0;
  auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };

  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << svg_number(yv)
        << "</text>\n";
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << svg_number(xv)
        << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << x_label
      << "</text>\n";

  for (const auto& b : bands) {
    out << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (Eigen::Index i = 0; i < x.size(); ++i) out << px(x(i)) << ',' << py(b.upper(i)) << ' ';
    for (Eigen::Index i = x.size() - 1; i >= 0; --i) out << px(x(i)) << ',' << py(b.lower(i)) << ' ';
    out << "\"/>\n";
  }
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (Eigen::Index i = 0; i < x.size(); ++i) out << px(x(i)) << ',' << py(s.y(i)) << ' ';
    out << "\"/>\n";
  }
  double ly = T + 16;
  auto legend = [&](const std::string& name, const std::string& color, bool box) {
    if (box) {
      out << "<rect x=\"" << W - R - 150 << "\" y=\"" << ly - 9 << "\" width=\"18\" height=\"10\" fill=\"" << color
          << "\" fill-opacity=\"0.25\"/>\n";
    } else {
      out << "<line x1=\"" << W - R - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - R - 132 << "\" y2=\"" << ly - 4
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    }
    out << "<text x=\"" << W - R - 126 << "\" y=\"" << ly << "\">" << name << "</text>\n";
    ly += 16;
  };
  for (const auto& s : series) legend(s.name, s.color, false);
  for (const auto& b : bands) legend(b.name, b.color, true);
  out << "</svg>\n";
}

nlohmann::json to_json(const BetaTrainingResult& training) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : training.trace) {
    trace.push_back({{"beta", e.beta}, {"mean", e.mean}, {"std_error", e.std_error}, {"n_mc", e.n_samples}});
  }
  return {{"beta", training.beta},
          {"objective", training.best.mean},
          {"objective_std_error", training.best.std_error},
          {"seconds", training.seconds},
          {"case_aggregation", "mean"},
          {"trace", trace}};
}

nlohmann::json to_json(const StaticReport& report) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json j{{"sampler", method_name(m.kind)},
                     {"beta", m.beta},
                     {"coverage", m.coverage},
                     {"average_width", m.average_width},
                     {"n_draws", m.band.n_draws},
                     {"level", m.band.level},
                     {"degenerate_redraws", m.degenerate_redraws},
                     {"ensemble_seconds", m.ensemble_seconds}};
    if (m.training) j["training"] = to_json(*m.training);
    methods.push_back(std::move(j));
  }
  nlohmann::json j{{"benchmark", "parametric linear static"},
                   {"config", config_to_string(BenchmarkConfig{report.spec, {}})},
                   {"state_dim", report.spec.n},
                   {"snapshot_rank", report.rank},
                   {"singular_values", to_std(report.singular_values)},
                   {"rom_relative_error", report.rom_relative_error},
                   {"methods", methods},
                   {"setup_seconds", report.setup_seconds},
                   {"total_seconds", report.total_seconds},
                   {"reference_values",
                    {{"bootstrap_coverage", 0.956}, {"ppca_coverage", 0.969}, {"width_ratio", 1.9},
                     {"bootstrap_beta", 8}, {"bootstrap_training_seconds", 1.3}}}};
  if (report.width_ratio) j["width_ratio_ppca_over_bootstrap"] = *report.width_ratio;
  if (report.average_width_ratio) j["average_width_ratio_ppca_over_bootstrap"] = *report.average_width_ratio;
  return j;
}

nlohmann::json to_json(const DynamicReport& report) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t c = 0; c < m.bands.size(); ++c) {
      rows.push_back({{"channel", kDynamicChannelNames[c]},
                      {"coverage", m.coverage[c]},
                      {"average_width", m.average_width[c]}});
    }
    nlohmann::json j{{"sampler", method_name(m.kind)},
                     {"beta", m.beta},
                     {"rows", rows},
                     {"degenerate_redraws", m.degenerate_redraws},
                     {"ensemble_seconds", m.ensemble_seconds}};
    if (m.training) j["training"] = to_json(*m.training);
    methods.push_back(std::move(j));
  }
  nlohmann::json reference = nlohmann::json::array();
  for (const auto& r : kDynamicReference) {
    reference.push_back({{"channel", r.channel},
                         {"ppca_coverage", r.ppca_coverage},
                         {"ppca_width", r.ppca_width},
                         {"bootstrap_coverage", r.bootstrap_coverage},
                         {"bootstrap_width", r.bootstrap_width},
                         {"width_ratio", r.width_ratio}});
  }
  return {{"benchmark", "linear dynamics"},
          {"label", kSyntheticLabel},
          {"config", config_to_string(BenchmarkConfig{{}, report.spec})},
          {"state_dim", report.spec.n},
          {"snapshot_rank", report.rank},
          {"singular_values", to_std(report.singular_values)},
          {"methods", methods},
          {"width_ratio_ppca_over_bootstrap", report.width_ratio},
          {"average_width_ratio_ppca_over_bootstrap", report.average_width_ratio},
          {"hdm_seconds", report.hdm_seconds},
          {"rom_seconds", report.rom_seconds},
          {"total_seconds", report.total_seconds},
          {"reference_values_original_structure", reference}};
}

std::vector<fs::path> write_training_report(const fs::path& out_dir, const std::string& prefix, SamplerKind kind,
                                            const BetaTrainingResult& result) {
  ensure_dir(out_dir);
  const fs::path csv = out_dir / (prefix + "_training_" + method_name(kind) + ".csv");
  write_training_trace(csv, result);
  return {csv};
}

std::vector<fs::path> write_static_report(const fs::path& out_dir, const StaticReport& report, bool include_draws) {
  ensure_dir(out_dir);
  std::vector<fs::path> written;
  const fs::path json = out_dir / "static_report.json";
  write_json(json, to_json(report));
  written.push_back(json);

  const Vector dof = Vector::LinSpaced(report.spec.n, 1.0, static_cast<double>(report.spec.n));
  const fs::path curves = out_dir / "static_hdm_vs_rom.csv";
  write_columns(curves, {"dof", "hdm", "rom"}, {dof, report.truth, report.rom});
  written.push_back(curves);
  const fs::path fig = out_dir / "static_hdm_vs_rom.svg";
  write_line_plot(fig, "HDM vs ROM displacement at the test parameter", "DOF", dof,
                  {{"HDM", report.truth, "#000000", false}, {"ROM", report.rom, "#2ca02c", true}});
  written.push_back(fig);

  std::vector<std::vector<std::string>> summary{
      {"sampler", "beta", "coverage", "average_width", "n_draws", "degenerate_redraws"}};
  for (const auto& m : report.methods) {
    const std::string name = method_name(m.kind);
    const fs::path band = out_dir / ("static_band_" + name + ".csv");
    write_columns(band, {"dof", "hdm", "rom", "srom_mean", "lower", "upper"},
                  {dof, report.truth, report.rom, m.ensemble_mean, m.band.lower, m.band.upper});
    written.push_back(band);
    const fs::path svg = out_dir / ("static_band_" + name + ".svg");
    write_line_plot(svg, "Static problem: 95% PI, " + name, "DOF", dof,
                    {{"HDM", report.truth, "#000000", false},
                     {"ROM", report.rom, "#2ca02c", true},
                     {"SROM mean", m.ensemble_mean, method_color(m.kind), false}},
                    {{"PI", m.band.lower, m.band.upper, method_color(m.kind)}});
    written.push_back(svg);
    const fs::path manifest = out_dir / ("static_ensemble_" + name + ".json");
    write_json(manifest, m.manifest);
    written.push_back(manifest);
    if (include_draws) {
      const fs::path draws = out_dir / ("static_draws_" + name + ".csv");
      io::write_csv(draws, m.draws);
      written.push_back(draws);
    }
    if (m.training) {
      const auto t = write_training_report(out_dir, "static", m.kind, *m.training);
      written.insert(written.end(), t.begin(), t.end());
    }
    summary.push_back({name, std::to_string(m.beta), fmt(m.coverage), fmt(m.average_width),
                       std::to_string(m.band.n_draws), std::to_string(m.degenerate_redraws)});
  }
  if (report.width_ratio) {
    summary.push_back({"ppca/bootstrap width ratio", "", "", fmt(*report.width_ratio), "", ""});
    summary.push_back({"ppca/bootstrap average-width ratio", "", "", fmt(*report.average_width_ratio), "", ""});
  }
  const fs::path table = out_dir / "static_summary.csv";
  io::write_csv_rows(table, summary);
  written.push_back(table);
  return written;
}

std::vector<fs::path> write_dynamic_report(const fs::path& out_dir, const DynamicReport& report,
                                           bool include_draws) {
  ensure_dir(out_dir);
  std::vector<fs::path> written;
  const fs::path json = out_dir / "dynamic_report.json";
  write_json(json, to_json(report));
  written.push_back(json);

  if (report.hdm.times.size() > 0) {
    const fs::path traj = out_dir / "dynamic_hdm_trajectory.csv";
    write_trajectory_csv(traj, report.hdm,
                         {static_cast<Eigen::Index>(report.spec.monitored_index()),
                          static_cast<Eigen::Index>(report.spec.random_index())});
    written.push_back(traj);
  }

  const std::size_t n_channels = report.truth.size();
  for (const auto& m : report.methods) {
    const std::string name = method_name(m.kind);
    for (std::size_t c = 0; c < n_channels; ++c) {
      const std::string ch = kDynamicChannelNames[c];
      const fs::path csv = out_dir / ("dynamic_" + name + "_" + ch + ".csv");
      write_columns(csv, {"time_ms", "hdm", "rom", "srom_mean", "lower", "upper"},
                    {report.times, report.truth[c], report.rom[c], m.means[c], m.bands[c].lower, m.bands[c].upper});
      written.push_back(csv);
      const fs::path svg = out_dir / ("dynamic_" + name + "_" + ch + ".svg");
      write_line_plot(svg, std::string("Dynamics (") + kSyntheticLabel + "): " + ch + ", " + name, "time [ms]",
                      report.times,
                      {{"HDM", report.truth[c], "#000000", false},
                       {"ROM", report.rom[c], "#2ca02c", true},
                       {"SROM mean", m.means[c], method_color(m.kind), false}},
                      {{"95% PI", m.bands[c].lower, m.bands[c].upper, method_color(m.kind)}});
      written.push_back(svg);
      if (include_draws) {
        const fs::path draws = out_dir / ("dynamic_draws_" + name + "_" + ch + ".csv");
        io::write_csv(draws, m.draws[c]);
        written.push_back(draws);
      }
    }
    const fs::path manifest = out_dir / ("dynamic_ensemble_" + name + ".json");
    write_json(manifest, m.manifest);
    written.push_back(manifest);
    if (m.training) {
      const auto t = write_training_report(out_dir, "dynamic", m.kind, *m.training);
      written.insert(written.end(), t.begin(), t.end());
    }
  }

  std::vector<std::vector<std::string>> table{{"label", "channel", "sampler", "beta", "coverage", "average_width",
                                               "width_ratio_ppca_over_bootstrap", "reference_coverage",
                                               "reference_width", "reference_width_ratio"}};
  for (std::size_t c = 0; c < n_channels; ++c) {
    for (const auto& m : report.methods) {
      const auto& ref = kDynamicReference[c];
      const bool boot = m.kind == SamplerKind::Bootstrap;
      table.push_back({kSyntheticLabel, kDynamicChannelNames[c], method_name(m.kind), std::to_string(m.beta),
                       fmt(m.coverage[c]), fmt(m.average_width[c]),
                       report.width_ratio.empty() ? "" : fmt(report.width_ratio[c]),
                       fmt(boot ? ref.bootstrap_coverage : ref.ppca_coverage),
                       fmt(boot ? ref.bootstrap_width : ref.ppca_width), fmt(ref.width_ratio)});
    }
  }
  const fs::path csv = out_dir / "dynamic_table.csv";
  io::write_csv_rows(csv, table);
  written.push_back(csv);
  return written;
}

void print_static_summary(std::ostream& out, const StaticReport& report) {
  out << "static benchmark: n=" << report.spec.n << " snapshots=" << report.spec.n_snapshots << " rank=" << report.rank
      << " k=" << report.spec.k << "\n";
  out << "  deterministic ROM relative error at mu_test: " << report.rom_relative_error << "\n";
  for (const auto& m : report.methods) {
    out << "  " << std::left << std::setw(10) << method_name(m.kind) << " beta=" << std::setw(4) << m.beta
        << " coverage=" << std::fixed << std::setprecision(4) << m.coverage << " avg_width=" << std::scientific
        << std::setprecision(4) << m.average_width << std::defaultfloat;
    if (m.training) out << " train_s=" << std::setprecision(3) << m.training->seconds;
    out << "\n";
  }
  if (report.width_ratio) {
    out << "  width ratio ppca/bootstrap: " << *report.width_ratio << " (ratio of averages "
        << *report.average_width_ratio << ")\n";
  }
  out << "  total " << report.total_seconds << " s\n";
}

void print_dynamic_summary(std::ostream& out, const DynamicReport& report) {
  out << "dynamic benchmark (" << kSyntheticLabel << "): n=" << report.spec.n << " steps=" << report.spec.n_steps
      << " rank=" << report.rank << " k=" << report.spec.k << "\n";
  for (const auto& m : report.methods) out << "  " << method_name(m.kind) << " beta=" << m.beta << "\n";
  out << "  channel  sampler    coverage  avg_width     ratio\n";
  for (std::size_t c = 0; c < report.truth.size(); ++c) {
    for (const auto& m : report.methods) {
      out << "  " << std::left << std::setw(8) << kDynamicChannelNames[c] << ' ' << std::setw(10)
          << method_name(m.kind) << ' ' << std::fixed << std::setprecision(4) << m.coverage[c] << "   "
          << std::scientific << std::setprecision(3) << m.average_width[c];
      if (!report.width_ratio.empty()) out << "   " << std::fixed << std::setprecision(3) << report.width_ratio[c];
      out << std::defaultfloat << "\n";
    }
  }
  out << "  HDM " << report.hdm_seconds << " s, ROM " << report.rom_seconds << " s, total " << report.total_seconds
      << " s\n";
}

}  // namespace ssrom::report
