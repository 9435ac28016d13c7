#pragma once

#include <json.hpp>

#include "ssrom/linalg.hpp"

namespace ssrom {

struct PredictionBand {
  Vector lower;
  Vector upper;
  double level = 0.95;
  int n_draws = 0;

  Eigen::Index size() const noexcept { return lower.size(); }
  Vector width() const { return upper - lower; }
};

// Linear interpolation between order statistics: for sorted x_0..x_{N-1},
// Q(p) = x_j + (h - j)(x_{j+1} - x_j) with h = (N - 1) p, j = floor(h).
double empirical_quantile(Vector values, double p);

// Pointwise quantiles at (1 - level)/2 and (1 + level)/2 of an
// n_draws x T ensemble. Needs n_draws >= 1 / (1 - level), i.e. 20 for 95%.
PredictionBand empirical_band(const Matrix& draws, double level = 0.95);

// Fraction of points with lower <= truth <= upper.
double coverage(const PredictionBand& band, const Vector& truth);

double average_width(const PredictionBand& band);

// Mean over points of width_a / width_b, skipping points where both widths
// are below 1e-14. Throws NumericalError if every point is skipped.
double width_ratio(const PredictionBand& a, const PredictionBand& b);

// average_width(a) / average_width(b).
double average_width_ratio(const PredictionBand& a, const PredictionBand& b);

Vector ensemble_mean(const Matrix& draws);

nlohmann::json band_summary(const PredictionBand& band, const Vector& truth);

}  // namespace ssrom
