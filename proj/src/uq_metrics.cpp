#include "ssrom/uq_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssrom/error.hpp"

namespace ssrom {

namespace {

constexpr double kDegenerateWidth = 1e-14;

void check_grid(const PredictionBand& band, Eigen::Index n, const char* what) {
  if (band.size() != n || band.upper.size() != n) {
    throw InputError(std::string(what) + ": grid mismatch (" + std::to_string(band.size()) + " vs " +
                     std::to_string(n) + ")");
  }
}

}  // namespace

double empirical_quantile(Vector values, double p) {
  if (values.size() == 0) throw InputError("empirical_quantile: no values");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("empirical_quantile: p outside [0,1]");
  std::sort(values.data(), values.data() + values.size());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto j = static_cast<Eigen::Index>(std::floor(h));
  if (j + 1 >= values.size()) return values(values.size() - 1);
  return values(j) + (h - static_cast<double>(j)) * (values(j + 1) - values(j));
}

PredictionBand empirical_band(const Matrix& draws, double level) {
  if (!(level > 0.0 && level < 1.0)) throw InputError("empirical_band: level must lie in (0,1)");
  const auto n = draws.rows();
  const double required = std::ceil(1.0 / (1.0 - level) - 1e-9);
  if (static_cast<double>(n) < required) {
    throw InputError("empirical_band: " + std::to_string(n) + " draws are too few for level " +
                     std::to_string(level) + " (need " + std::to_string(static_cast<long>(required)) + ")");
  }
  const double tail = 0.5 * (1.0 - level);
  PredictionBand band;
  band.level = level;
  band.n_draws = static_cast<int>(n);
  band.lower.resize(draws.cols());
  band.upper.resize(draws.cols());
  for (Eigen::Index t = 0; t < draws.cols(); ++t) {
    Vector column = draws.col(t);
    band.lower(t) = empirical_quantile(column, tail);
    band.upper(t) = empirical_quantile(std::move(column), 1.0 - tail);
  }
  return band;
}

double coverage(const PredictionBand& band, const Vector& truth) {
  check_grid(band, truth.size(), "coverage");
  if (truth.size() == 0) throw InputError("coverage: empty grid");
  Eigen::Index covered = 0;
  for (Eigen::Index t = 0; t < truth.size(); ++t) {
    if (band.lower(t) <= truth(t) && truth(t) <= band.upper(t)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(truth.size());
}

double average_width(const PredictionBand& band) {
  if (band.size() == 0) throw InputError("average_width: empty band");
  return band.width().mean();
}

double width_ratio(const PredictionBand& a, const PredictionBand& b) {
  check_grid(a, b.size(), "width_ratio");
  const Vector wa = a.width();
  const Vector wb = b.width();
  double sum = 0.0;
  Eigen::Index used = 0;
  for (Eigen::Index t = 0; t < wa.size(); ++t) {
    if (wa(t) < kDegenerateWidth && wb(t) < kDegenerateWidth) continue;
    sum += wa(t) / wb(t);
    ++used;
  }
  if (used == 0) throw NumericalError("width_ratio: every point has a degenerate band");
  return sum / static_cast<double>(used);
}

double average_width_ratio(const PredictionBand& a, const PredictionBand& b) {
  check_grid(a, b.size(), "average_width_ratio");
  const double wb = average_width(b);
  if (!(wb > 0.0)) throw NumericalError("average_width_ratio: reference band has zero width");
  return average_width(a) / wb;
}

Vector ensemble_mean(const Matrix& draws) { return draws.colwise().mean().transpose(); }

nlohmann::json band_summary(const PredictionBand& band, const Vector& truth) {
  return {{"level", band.level},
          {"n_draws", band.n_draws},
          {"points", band.size()},
          {"coverage", coverage(band, truth)},
          {"average_width", average_width(band)}};
}

}  // namespace ssrom
