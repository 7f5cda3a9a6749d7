#include "dcsbm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "dcsbm/errors.hpp"
#include "dcsbm/hypothesis.hpp"
#include "dcsbm/io.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/rng.hpp"
#include "dcsbm/transform.hpp"

namespace dcsbm::mc {

namespace {

constexpr std::uint64_t kAltClassOffset = 1ULL << 40;

std::size_t resolve_threads(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

double resolve_clamp(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.clamp_floor > 0.0) return cfg.clamp_floor;
  const double nd = static_cast<double>(n);
  return 1.0 / (nd * nd);
}

// Runs fn(trial) across a worker pool; results must be stored by index so
// aggregate output is identical for any thread count.
void parallel_trials(std::size_t total, std::size_t threads,
                     const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || total <= 1) {
    for (std::size_t t = 0; t < total; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (std::size_t t; (t = next.fetch_add(1)) < total;) {
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t workers = std::min(threads, total);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string join_n(const std::vector<std::size_t>& ns) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i) os << '-';
    os << ns[i];
  }
  return os.str();
}

std::string base_name(const char* kind, const std::vector<std::size_t>& ns,
                      std::uint64_t seed) {
  return std::string(kind) + "_n" + join_n(ns) + "_seed" + std::to_string(seed);
}

std::string out_path(const ExperimentConfig& cfg, const std::string& file) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / file).string();
}

std::string json_array(const std::vector<double>& xs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ", ";
    os << io::fmt_g17(xs[i]);
  }
  os << ']';
  return os.str();
}

std::string json_array(const std::vector<std::size_t>& xs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ", ";
    os << xs[i];
  }
  os << ']';
  return os.str();
}

// Config echo shared by every summary. Thread count is an execution detail
// and deliberately not part of the payload.
std::string config_echo(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "\"kind\": \"" << to_string(cfg.kind) << "\", \"n\": "
     << json_array(cfg.n_values) << ", \"trials\": " << cfg.trials
     << ", \"master_seed\": " << cfg.master_seed
     << ", \"clamp_floor\": " << io::fmt_g17(cfg.clamp_floor);
  return os.str();
}

// One-sample KS distance of sorted values against Unif[0, 1].
double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double m = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, std::abs(u[i] - static_cast<double>(i) / m));
    d = std::max(d, std::abs(u[i] - static_cast<double>(i + 1) / m));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

// Asymptotic Kolmogorov tail probability.
double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size();
  if (m == 0) return 0.0;
  return (m % 2 == 1) ? xs[m / 2] : 0.5 * (xs[m / 2 - 1] + xs[m / 2]);
}

struct EdgeStats {
  double upper = 0.0;  // n^{2/3} (lambda1 - 2)
  double lower = 0.0;  // n^{2/3} (-lambdan - 2)
};

EdgeStats null_edge_stats(std::size_t n, std::uint64_t trial_seed,
                          double clamp_floor) {
  const model::DcsbmParams params = model::generate_null_experiment(n, trial_seed);
  const model::AdjacencyMatrix a = model::sample_adjacency(params, trial_seed);
  transform::TransformedMatrix b =
      transform::scale(transform::estimated_transform(a, clamp_floor));
  const auto [l1, ln] = spectra::extreme_eigenvalues(b.entries);
  const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
  return {scale * (l1 - 2.0), scale * (-ln - 2.0)};
}

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::null_calibration: return "null_calibration";
    case ExperimentKind::tw_histogram: return "tw_histogram";
    case ExperimentKind::semicircle: return "semicircle";
    case ExperimentKind::roc: return "roc";
    case ExperimentKind::concentration: return "concentration";
  }
  return "unknown";
}

double null_statistic(std::size_t n, std::uint64_t trial_seed, double clamp_floor,
                      double* lambda1, double* lambdan) {
  const model::DcsbmParams params = model::generate_null_experiment(n, trial_seed);
  const model::AdjacencyMatrix a = model::sample_adjacency(params, trial_seed);
  transform::TransformedMatrix b =
      transform::scale(transform::estimated_transform(a, clamp_floor));
  const auto [l1, ln] = spectra::extreme_eigenvalues(b.entries);
  if (lambda1) *lambda1 = l1;
  if (lambdan) *lambdan = ln;
  return hypothesis::statistic(l1, ln, n);
}

double alternative_statistic(std::size_t n, std::uint64_t trial_seed,
                             double clamp_floor) {
  const model::DcsbmParams params =
      model::generate_alternative_experiment(n, trial_seed);
  const model::AdjacencyMatrix a = model::sample_adjacency(params, trial_seed);
  transform::TransformedMatrix b =
      transform::scale(transform::estimated_transform(a, clamp_floor));
  const auto [l1, ln] = spectra::extreme_eigenvalues(b.entries);
  return hypothesis::statistic(l1, ln, n);
}

CalibrationResult null_calibration(const ExperimentConfig& cfg,
                                   const tw::TwTable& table) {
  if (cfg.trials < 1) fail(ErrorCategory::model, "trials must be >= 1");
  const std::size_t n = cfg.n_values.at(0);
  if (n < 6) fail(ErrorCategory::model, "experiment n must be >= 6");
  const double clamp = resolve_clamp(cfg, n);

  CalibrationResult res;
  res.n = n;
  res.trials = cfg.trials;
  res.master_seed = cfg.master_seed;
  res.statistics.assign(cfg.trials, 0.0);
  parallel_trials(cfg.trials, resolve_threads(cfg), [&](std::size_t t) {
    res.statistics[t] =
        null_statistic(n, rng::derive_seed(cfg.master_seed, t), clamp);
  });

  for (double alpha : cfg.alphas) {
    CalibrationRow row;
    row.alpha = alpha;
    row.threshold = table.quantile(1.0 - alpha / 2.0);
    for (double s : res.statistics)
      if (s >= row.threshold) ++row.rejections;
    row.rate = static_cast<double>(row.rejections) / static_cast<double>(cfg.trials);
    row.stderr_ =
        std::sqrt(row.rate * (1.0 - row.rate) / static_cast<double>(cfg.trials));
    res.rows.push_back(row);
  }

  if (!cfg.out_dir.empty()) {
    const std::string base = base_name("null_calibration", {n}, cfg.master_seed);
    std::ostringstream csv;
    csv << "alpha,empirical_type_I,binomial_stderr\n";
    for (const CalibrationRow& row : res.rows)
      csv << io::fmt_g17(row.alpha) << ',' << io::fmt_g17(row.rate) << ','
          << io::fmt_g17(row.stderr_) << '\n';
    io::write_file(out_path(cfg, base + ".csv"), csv.str());

    std::vector<double> thresholds, rates, stderrs;
    for (const CalibrationRow& row : res.rows) {
      thresholds.push_back(row.threshold);
      rates.push_back(row.rate);
      stderrs.push_back(row.stderr_);
    }
    std::ostringstream js;
    js << "{" << config_echo(cfg) << ", \"alphas\": " << json_array(cfg.alphas)
       << ", \"thresholds\": " << json_array(thresholds)
       << ", \"rates\": " << json_array(rates)
       << ", \"stderrs\": " << json_array(stderrs) << "}\n";
    io::write_file(out_path(cfg, base + "_summary.json"), js.str());
  }
  return res;
}

TwHistogramResult tw_histogram_experiment(const ExperimentConfig& cfg,
                                          const tw::TwTable& table) {
  if (cfg.trials < 1) fail(ErrorCategory::model, "trials must be >= 1");
  const std::size_t n = cfg.n_values.at(0);
  if (n < 6) fail(ErrorCategory::model, "experiment n must be >= 6");
  const double clamp = resolve_clamp(cfg, n);

  TwHistogramResult res;
  res.n = n;
  res.trials = cfg.trials;
  res.upper_stats.assign(cfg.trials, 0.0);
  res.lower_stats.assign(cfg.trials, 0.0);
  parallel_trials(cfg.trials, resolve_threads(cfg), [&](std::size_t t) {
    const EdgeStats s =
        null_edge_stats(n, rng::derive_seed(cfg.master_seed, t), clamp);
    res.upper_stats[t] = s.upper;
    res.lower_stats[t] = s.lower;
  });

  std::vector<double> u_upper(cfg.trials), u_lower(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    u_upper[t] = table.cdf(res.upper_stats[t]);
    u_lower[t] = table.cdf(res.lower_stats[t]);
  }
  res.ks_uniform_upper = ks_uniform(u_upper);
  res.ks_uniform_lower = ks_uniform(u_lower);
  res.mean_upper = std::accumulate(res.upper_stats.begin(), res.upper_stats.end(),
                                   0.0) /
                   static_cast<double>(cfg.trials);
  res.mean_lower = std::accumulate(res.lower_stats.begin(), res.lower_stats.end(),
                                   0.0) /
                   static_cast<double>(cfg.trials);
  res.ks_two_sample = ks_two_sample(res.upper_stats, res.lower_stats);
  const double ne = static_cast<double>(cfg.trials) / 2.0;
  const double lam =
      (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * res.ks_two_sample;
  res.two_sample_p = kolmogorov_q(lam);

  if (!cfg.out_dir.empty()) {
    const std::string base = base_name("tw_histogram", {n}, cfg.master_seed);

    std::ostringstream samples;
    samples << "lambda1_stat,lambdan_stat\n";
    for (std::size_t t = 0; t < cfg.trials; ++t)
      samples << io::fmt_g17(res.upper_stats[t]) << ','
              << io::fmt_g17(res.lower_stats[t]) << '\n';
    io::write_file(out_path(cfg, base + "_samples.csv"), samples.str());

    // Histogram of the lambda1 statistic with the TW1 density overlay.
    const auto [lo_it, hi_it] =
        std::minmax_element(res.upper_stats.begin(), res.upper_stats.end());
    const double lo = *lo_it - 1e-9, hi = *hi_it + 1e-9;
    const double width = (hi - lo) / static_cast<double>(cfg.bins);
    std::vector<std::size_t> counts(cfg.bins, 0);
    for (double s : res.upper_stats) {
      std::size_t b = static_cast<std::size_t>((s - lo) / width);
      if (b >= cfg.bins) b = cfg.bins - 1;
      ++counts[b];
    }
    std::ostringstream hist;
    hist << "bin_center,count,density,tw1_pdf\n";
    for (std::size_t b = 0; b < cfg.bins; ++b) {
      const double center = lo + width * (static_cast<double>(b) + 0.5);
      const double density = static_cast<double>(counts[b]) /
                             (static_cast<double>(cfg.trials) * width);
      hist << io::fmt_g17(center) << ',' << counts[b] << ','
           << io::fmt_g17(density) << ',' << io::fmt_g17(table.pdf(center))
           << '\n';
    }
    io::write_file(out_path(cfg, base + "_hist.csv"), hist.str());

    std::ostringstream js;
    js << "{" << config_echo(cfg)
       << ", \"ks_uniform_upper\": " << io::fmt_g17(res.ks_uniform_upper)
       << ", \"ks_uniform_lower\": " << io::fmt_g17(res.ks_uniform_lower)
       << ", \"mean_upper\": " << io::fmt_g17(res.mean_upper)
       << ", \"mean_lower\": " << io::fmt_g17(res.mean_lower)
       << ", \"ks_two_sample\": " << io::fmt_g17(res.ks_two_sample)
       << ", \"two_sample_p\": " << io::fmt_g17(res.two_sample_p) << "}\n";
    io::write_file(out_path(cfg, base + "_summary.json"), js.str());
  }
  return res;
}

SemicircleResult semicircle_experiment(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n_values.at(0);
  if (n < 6) fail(ErrorCategory::model, "experiment n must be >= 6");
  const double clamp = resolve_clamp(cfg, n);
  const std::uint64_t seed = rng::derive_seed(cfg.master_seed, 0);

  const model::DcsbmParams params = model::generate_null_experiment(n, seed);
  const model::AdjacencyMatrix a = model::sample_adjacency(params, seed);

  SemicircleResult res;
  res.n = n;
  {
    transform::TransformedMatrix b =
        transform::scale(transform::estimated_transform(a, clamp));
    const spectra::SpectralSummary spec = spectra::symmetric_eigenvalues(b.entries);
    res.hist = spectra::esd(spec, cfg.bins);
    res.ks_estimated = spectra::ks_distance_to_semicircle(spec);
  }
  {
    transform::TransformedMatrix b =
        transform::scale(transform::oracle_transform(a, params));
    const spectra::SpectralSummary spec = spectra::symmetric_eigenvalues(b.entries);
    res.ks_oracle = spectra::ks_distance_to_semicircle(spec);
  }

  if (!cfg.out_dir.empty()) {
    const std::string base = base_name("semicircle", {n}, cfg.master_seed);
    std::ostringstream csv;
    csv << "bin_center,density,semicircle_density\n";
    for (std::size_t b = 0; b < res.hist.counts.size(); ++b) {
      const double width = res.hist.edges[b + 1] - res.hist.edges[b];
      const double center = 0.5 * (res.hist.edges[b] + res.hist.edges[b + 1]);
      const double density = static_cast<double>(res.hist.counts[b]) /
                             (static_cast<double>(res.hist.n) * width);
      const double rho =
          (center > -2.0 && center < 2.0)
              ? std::sqrt(4.0 - center * center) / (2.0 * 3.14159265358979323846)
              : 0.0;
      csv << io::fmt_g17(center) << ',' << io::fmt_g17(density) << ','
          << io::fmt_g17(rho) << '\n';
    }
    io::write_file(out_path(cfg, base + "_esd.csv"), csv.str());

    std::ostringstream js;
    js << "{" << config_echo(cfg)
       << ", \"ks_estimated\": " << io::fmt_g17(res.ks_estimated)
       << ", \"ks_oracle\": " << io::fmt_g17(res.ks_oracle) << "}\n";
    io::write_file(out_path(cfg, base + "_summary.json"), js.str());
  }
  return res;
}

std::vector<RocCurve> roc_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) fail(ErrorCategory::model, "trials must be >= 1");
  std::vector<RocCurve> curves;
  for (std::size_t n : cfg.n_values) {
    if (n < 6 || n % 3 != 0)
      fail(ErrorCategory::model, "roc experiment needs n divisible by 3");
    const double clamp = resolve_clamp(cfg, n);

    std::vector<double> null_stats(cfg.trials), alt_stats(cfg.trials);
    parallel_trials(cfg.trials * 2, resolve_threads(cfg), [&](std::size_t t) {
      if (t < cfg.trials) {
        null_stats[t] =
            null_statistic(n, rng::derive_seed(cfg.master_seed, t), clamp);
      } else {
        const std::size_t i = t - cfg.trials;
        alt_stats[i] = alternative_statistic(
            n, rng::derive_seed(cfg.master_seed, kAltClassOffset + i), clamp);
      }
    });

    // Threshold sweep over the pooled statistics, descending; the raw
    // statistic is the discriminant.
    std::vector<double> pooled = null_stats;
    pooled.insert(pooled.end(), alt_stats.begin(), alt_stats.end());
    std::sort(pooled.begin(), pooled.end(), std::greater<double>());
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

    std::vector<double> sorted_null = null_stats, sorted_alt = alt_stats;
    std::sort(sorted_null.begin(), sorted_null.end(), std::greater<double>());
    std::sort(sorted_alt.begin(), sorted_alt.end(), std::greater<double>());

    RocCurve curve;
    curve.n = n;
    curve.trials_per_class = cfg.trials;
    curve.points.emplace_back(0.0, 0.0);
    const double m = static_cast<double>(cfg.trials);
    // In a descending-sorted vector, upper_bound with greater<> lands on the
    // first element < thr, so the offset counts values >= thr.
    const auto count_ge = [](const std::vector<double>& xs, double thr) {
      return static_cast<double>(
          std::upper_bound(xs.begin(), xs.end(), thr, std::greater<double>()) -
          xs.begin());
    };
    for (double thr : pooled) {
      curve.points.emplace_back(count_ge(sorted_null, thr) / m,
                                count_ge(sorted_alt, thr) / m);
    }
    if (curve.points.back() != std::make_pair(1.0, 1.0))
      curve.points.emplace_back(1.0, 1.0);

    double auc = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      const auto& [x0, y0] = curve.points[i - 1];
      const auto& [x1, y1] = curve.points[i];
      auc += (x1 - x0) * 0.5 * (y0 + y1);
    }
    curve.auc = auc;
    curves.push_back(std::move(curve));

    if (!cfg.out_dir.empty()) {
      const std::string base = base_name("roc", {n}, cfg.master_seed);
      std::ostringstream csv;
      csv << "fpr,tpr\n";
      for (const auto& [x, y] : curves.back().points)
        csv << io::fmt_g17(x) << ',' << io::fmt_g17(y) << '\n';
      io::write_file(out_path(cfg, base + ".csv"), csv.str());
    }
  }

  if (!cfg.out_dir.empty()) {
    std::vector<double> aucs;
    for (const RocCurve& c : curves) aucs.push_back(c.auc);
    const std::string base = base_name("roc", cfg.n_values, cfg.master_seed);
    std::ostringstream js;
    js << "{" << config_echo(cfg) << ", \"aucs\": " << json_array(aucs) << "}\n";
    io::write_file(out_path(cfg, base + "_summary.json"), js.str());
  }
  return curves;
}

ConcentrationResult concentration_experiment(const ExperimentConfig& cfg,
                                             const std::vector<double>& t_grid) {
  if (cfg.trials < 1) fail(ErrorCategory::model, "trials must be >= 1");
  constexpr double kEps = 0.005;  // analytic margin of the null generator
  constexpr std::size_t kPairCount = 100;

  std::size_t n_min = SIZE_MAX;
  for (std::size_t n : cfg.n_values) n_min = std::min(n_min, n);
  if (n_min < 6) fail(ErrorCategory::model, "experiment n must be >= 6");

  // 98 probe pairs fixed across trials, plus the per-trial extreme-theta
  // diagonal pairs.
  std::vector<std::pair<std::size_t, std::size_t>> fixed_pairs;
  for (std::size_t m = 0; fixed_pairs.size() < kPairCount - 2; ++m) {
    const std::size_t i =
        rng::hash3(cfg.master_seed, rng::kStreamPairs, 2 * m) % n_min;
    const std::size_t j =
        rng::hash3(cfg.master_seed, rng::kStreamPairs, 2 * m + 1) % n_min;
    fixed_pairs.emplace_back(i, j);
  }

  ConcentrationResult res;
  for (std::size_t n : cfg.n_values) {
    std::vector<double> max_errs(cfg.trials, 0.0);
    parallel_trials(cfg.trials, resolve_threads(cfg), [&](std::size_t t) {
      const std::uint64_t seed = rng::derive_seed(cfg.master_seed, t);
      const model::DcsbmParams params = model::generate_null_experiment(n, seed);
      const model::AdjacencyMatrix a = model::sample_adjacency(params, seed);
      const std::vector<double> deg = a.degrees();
      double total = 0.0;
      for (double d : deg) total += d;
      if (total <= 0.0) fail(ErrorCategory::model, "degenerate graph (no edges)");

      const auto argminmax = std::minmax_element(params.theta.begin(),
                                                 params.theta.end());
      const std::size_t i_min =
          static_cast<std::size_t>(argminmax.first - params.theta.begin());
      const std::size_t i_max =
          static_cast<std::size_t>(argminmax.second - params.theta.begin());

      double worst = 0.0;
      auto probe = [&](std::size_t i, std::size_t j) {
        const double est = deg[i] * deg[j] / total;
        const double p = model::edge_probability(params, i, j);
        worst = std::max(worst, std::abs(est - p));
      };
      for (const auto& [i, j] : fixed_pairs) probe(i, j);
      probe(i_min, i_min);
      probe(i_max, i_max);
      max_errs[t] = worst;
    });

    const double nd = static_cast<double>(n);
    for (double t : t_grid) {
      ConcentrationRow row;
      row.n = n;
      row.t = t;
      row.bound = (8.0 / kEps) * (std::sqrt(t) / std::sqrt(nd) + t / nd);
      std::size_t covered = 0;
      for (double e : max_errs)
        if (e <= row.bound) ++covered;
      row.coverage = static_cast<double>(covered) / static_cast<double>(cfg.trials);
      row.floor_ = 1.0 - 2.0 * (2.0 * std::exp(-2.0 * t * t) +
                                std::exp(-nd * nd * kEps * kEps / 18.0));
      res.rows.push_back(row);
    }

    std::vector<double> scaled(max_errs);
    for (double& e : scaled) e *= std::sqrt(nd);
    res.median_scaled_error.emplace_back(n, median(scaled));
  }

  if (!cfg.out_dir.empty()) {
    const std::string base =
        base_name("concentration", cfg.n_values, cfg.master_seed);
    std::ostringstream cov;
    cov << "n,t,bound,empirical_coverage,theoretical_floor\n";
    for (const ConcentrationRow& row : res.rows)
      cov << row.n << ',' << io::fmt_g17(row.t) << ',' << io::fmt_g17(row.bound)
          << ',' << io::fmt_g17(row.coverage) << ',' << io::fmt_g17(row.floor_)
          << '\n';
    io::write_file(out_path(cfg, base + "_coverage.csv"), cov.str());

    std::ostringstream scal;
    scal << "n,median_sqrt_n_max_error\n";
    for (const auto& [n, med] : res.median_scaled_error)
      scal << n << ',' << io::fmt_g17(med) << '\n';
    io::write_file(out_path(cfg, base + "_scaling.csv"), scal.str());

    std::ostringstream js;
    js << "{" << config_echo(cfg) << ", \"t_grid\": " << json_array(t_grid)
       << ", \"epsilon\": " << io::fmt_g17(kEps) << "}\n";
    io::write_file(out_path(cfg, base + "_summary.json"), js.str());
  }
  return res;
}

std::pair<double, double> ratio_bound_gap(double a, double b, double c, double d) {
  if (b == 0.0) fail(ErrorCategory::model, "ratio_bound_gap: b must be nonzero");
  if (b + d == 0.0)
    fail(ErrorCategory::model, "ratio_bound_gap: b + d must be nonzero");
  if (!(std::abs(a / b) <= 1.0))
    fail(ErrorCategory::model, "ratio_bound_gap: |a/b| must be <= 1");
  const double lhs = std::abs((a + c) / (b + d) - a / b);
  const double rhs = (std::abs(c) + std::abs(d)) / std::abs(b + d);
  return {lhs, rhs};
}

}  // namespace dcsbm::mc
