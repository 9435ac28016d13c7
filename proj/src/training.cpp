#include "ssrom/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <string>

#include "ssrom/error.hpp"
#include "ssrom/matrix_io.hpp"
#include "ssrom/rng.hpp"

namespace ssrom {

namespace {

double combined_error(const ObjectiveEstimate& a, const ObjectiveEstimate& b) {
  return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

// Scans in increasing beta with the incumbent rule.
const ObjectiveEstimate& select_best(const std::map<int, ObjectiveEstimate>& evaluated) {
  const ObjectiveEstimate* best = &evaluated.begin()->second;
  for (const auto& [beta, est] : evaluated) {
    if (est.mean < best->mean - combined_error(*best, est)) best = &est;
  }
  return *best;
}

}  // namespace

void TrainingSet::validate() const {
  if (truth_outputs.empty()) throw InputError("training set is empty");
  if (truth_outputs.size() != reference_outputs.size()) {
    throw InputError("training set: " + std::to_string(truth_outputs.size()) + " truth outputs but " +
                     std::to_string(reference_outputs.size()) + " reference outputs");
  }
  for (std::size_t c = 0; c < truth_outputs.size(); ++c) {
    if (truth_outputs[c].size() != reference_outputs[c].size()) {
      throw InputError("training set: case " + std::to_string(c) + " has mismatched series lengths");
    }
  }
  if (!(dt > 0.0)) throw InputError("training set: dt must be positive");
}

double distance_to_reference(const Vector& u, const Vector& reference, double dt) {
  if (u.size() != reference.size()) {
    throw InputError("distance_to_reference: lengths differ (" + std::to_string(u.size()) + " vs " +
                     std::to_string(reference.size()) + ")");
  }
  return std::sqrt((u - reference).squaredNorm() * dt);
}

ObjectiveEstimate estimate_objective(int beta, const TrainingSet& training, const SromPipeline& pipeline, int n_mc,
                                     std::uint64_t seed) {
  training.validate();
  if (n_mc < 2) throw InputError("estimate_objective: n_mc must be at least 2");
  const auto start = std::chrono::steady_clock::now();

  const std::size_t cases = training.cases();
  std::vector<double> truth_distance(cases);
  for (std::size_t c = 0; c < cases; ++c) {
    truth_distance[c] =
        distance_to_reference(training.truth_outputs[c], training.reference_outputs[c], training.dt);
  }

  std::vector<double> values(static_cast<std::size_t>(n_mc));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_mc; ++i) {
    try {
      const auto outputs = pipeline(beta, derive_seed(seed, static_cast<std::uint64_t>(i)));
      if (outputs.size() != cases) throw InputError("pipeline returned the wrong number of training outputs");
      double sum = 0.0;
      for (std::size_t c = 0; c < cases; ++c) {
        const double d = distance_to_reference(outputs[c], training.reference_outputs[c], training.dt) -
                         truth_distance[c];
        sum += d * d;
      }
      values[static_cast<std::size_t>(i)] = sum / static_cast<double>(cases);
    } catch (...) {
#pragma omp critical(ssrom_objective_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n_mc;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (n_mc - 1);

  ObjectiveEstimate est;
  est.beta = beta;
  est.mean = mean;
  est.std_error = std::sqrt(var / n_mc);
  est.n_samples = n_mc;
  est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

std::vector<int> coarse_beta_grid(int beta_min, int beta_max) {
  if (beta_min < 1 || beta_max < beta_min) throw InputError("beta grid: need 1 <= beta_min <= beta_max");
  std::vector<int> grid{beta_min, (3 * beta_min + 1) / 2};
  for (long b = 2L * beta_min; b <= beta_max; b *= 2) grid.push_back(static_cast<int>(b));
  grid.push_back(beta_max);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [&](int b) { return b > beta_max; }), grid.end());
  return grid;
}

BetaTrainingResult optimize_beta(const ObjectiveFunction& objective, const BetaSearch& search) {
  const auto start = std::chrono::steady_clock::now();
  BetaTrainingResult result;
  std::map<int, ObjectiveEstimate> evaluated;
  int failures = 0;
  auto eval = [&](int beta) -> const ObjectiveEstimate* {
    if (auto it = evaluated.find(beta); it != evaluated.end()) return &it->second;
    try {
      ObjectiveEstimate est = objective(beta);
      est.beta = beta;
      result.trace.push_back(est);
      return &evaluated.emplace(beta, est).first->second;
    } catch (const NumericalError&) {
      ++failures;
      return nullptr;
    }
  };

  const std::vector<int> grid = coarse_beta_grid(search.beta_min, search.beta_max);
  for (int b : grid) eval(b);
  if (evaluated.empty()) throw NumericalError("optimize_beta: every objective evaluation failed");

  // Bracket the grid minimum by its grid neighbours.
  const int incumbent = select_best(evaluated).beta;
  const auto pos = std::find(grid.begin(), grid.end(), incumbent) - grid.begin();
  int lo = grid[static_cast<std::size_t>(std::max<long>(0, pos - 1))];
  int hi = grid[static_cast<std::size_t>(std::min<long>(static_cast<long>(grid.size()) - 1, pos + 1))];

  constexpr double kInvPhi2 = 0.3819660112501051;  // 1 - 1/phi
  auto value = [&](int b) {
    const auto* e = eval(b);
    return e ? e->mean : std::numeric_limits<double>::infinity();
  };
  while (hi - lo > 3) {
    int x1 = lo + static_cast<int>(std::lround(kInvPhi2 * (hi - lo)));
    int x2 = hi - static_cast<int>(std::lround(kInvPhi2 * (hi - lo)));
    if (x1 >= x2) x2 = x1 + 1;
    if (value(x1) <= value(x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  for (int b = lo; b <= hi; ++b) eval(b);

  result.best = select_best(evaluated);
  result.beta = result.best.beta;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

BetaTrainingResult optimize_beta(const TrainingSet& training, const SromPipeline& pipeline,
                                 const BetaSearch& search) {
  training.validate();
  return optimize_beta(
      [&](int beta) { return estimate_objective(beta, training, pipeline, search.n_mc, search.seed); }, search);
}

void write_training_trace(const std::filesystem::path& path, const BetaTrainingResult& result) {
  std::vector<std::vector<std::string>> rows{{"beta", "mean", "std_error", "n_mc", "seconds", "case_aggregation"}};
  for (const auto& e : result.trace) {
    rows.push_back({std::to_string(e.beta), io::format_double(e.mean), io::format_double(e.std_error),
                    std::to_string(e.n_samples), io::format_double(e.seconds), "mean"});
  }
  io::write_csv_rows(path, rows);
}

}  // namespace ssrom
