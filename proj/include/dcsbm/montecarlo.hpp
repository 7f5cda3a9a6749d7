#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcsbm/spectra.hpp"
#include "dcsbm/tracy_widom.hpp"

namespace dcsbm::mc {

enum class ExperimentKind {
  null_calibration,
  tw_histogram,
  semicircle,
  roc,
  concentration,
};

const char* to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::null_calibration;
  std::vector<std::size_t> n_values = {2000};
  std::size_t trials = 500;
  std::vector<double> alphas = {0.01, 0.05, 0.1};
  std::uint64_t master_seed = 1;
  double clamp_floor = 0.0;  // 0 means the per-n default 1/n^2
  std::size_t threads = 0;   // 0 means hardware concurrency
  std::size_t bins = 60;
  std::string out_dir;       // empty means no files written
};

struct CalibrationRow {
  double alpha = 0.0;
  double threshold = 0.0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double stderr_ = 0.0;  // sqrt(rate (1 - rate) / trials)
};

struct CalibrationResult {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> statistics;  // per trial, in trial order
  std::vector<CalibrationRow> rows;
};

struct TwHistogramResult {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::vector<double> upper_stats;  // n^{2/3} (lambda1 - 2)
  std::vector<double> lower_stats;  // n^{2/3} (-lambdan - 2)
  double ks_uniform_upper = 0.0;    // KS of tw1_cdf(upper) vs Unif[0,1]
  double ks_uniform_lower = 0.0;
  double mean_upper = 0.0;
  double mean_lower = 0.0;
  double ks_two_sample = 0.0;  // upper vs lower samples
  double two_sample_p = 0.0;   // asymptotic Kolmogorov p-value
};

struct SemicircleResult {
  std::size_t n = 0;
  spectra::EsdHistogram hist;
  double ks_estimated = 0.0;
  double ks_oracle = 0.0;  // same realization, oracle transform
};

struct RocCurve {
  std::size_t n = 0;
  std::size_t trials_per_class = 0;
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), sweep order
  double auc = 0.0;
};

struct ConcentrationRow {
  std::size_t n = 0;
  double t = 0.0;
  double bound = 0.0;     // (8/eps)(sqrt(t) n^{-1/2} + t n^{-1})
  double coverage = 0.0;  // fraction of trials with max error within bound
  double floor_ = 0.0;    // 1 - 2 (2 e^{-2t^2} + e^{-n^2 eps^2 / 18})
};

struct ConcentrationResult {
  std::vector<ConcentrationRow> rows;
  // per n: median over trials of sqrt(n) * (max probe-pair error)
  std::vector<std::pair<std::size_t, double>> median_scaled_error;
};

// Rejection rate per alpha over repeated null trials.
CalibrationResult null_calibration(const ExperimentConfig& cfg,
                                   const tw::TwTable& table);

// Edge-statistic samples under the null, with TW1 overlay outputs.
TwHistogramResult tw_histogram_experiment(const ExperimentConfig& cfg,
                                          const tw::TwTable& table);

// Single-realization ESD against the semicircle law.
SemicircleResult semicircle_experiment(const ExperimentConfig& cfg);

// Null/alternative statistic sweep per n; thresholds swept over the pooled
// statistics.
std::vector<RocCurve> roc_experiment(const ExperimentConfig& cfg);

// Entrywise plug-in concentration against the deterministic bound, plus the
// sqrt(n) error-scaling table.
ConcentrationResult concentration_experiment(const ExperimentConfig& cfg,
                                             const std::vector<double>& t_grid);

// (lhs, rhs) of the ratio-perturbation bound
// |(a+c)/(b+d) - a/b| <= (|c| + |d|)/|b+d|.
// Preconditions: b != 0, b + d != 0, |a/b| <= 1.
std::pair<double, double> ratio_bound_gap(double a, double b, double c, double d);

// One null / alternative trial reduced to the test statistic; exposed for
// the acceptance suite and the CLI.
double null_statistic(std::size_t n, std::uint64_t trial_seed, double clamp_floor,
                      double* lambda1 = nullptr, double* lambdan = nullptr);
double alternative_statistic(std::size_t n, std::uint64_t trial_seed,
                             double clamp_floor);

}  // namespace dcsbm::mc
