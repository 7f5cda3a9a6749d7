#include "dcsbm/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dcsbm/errors.hpp"
#include "dcsbm/hypothesis.hpp"
#include "dcsbm/io.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/montecarlo.hpp"
#include "dcsbm/spectra.hpp"
#include "dcsbm/tracy_widom.hpp"
#include "dcsbm/transform.hpp"

namespace dcsbm::cli {

namespace {

io::GraphFormat parse_format(const std::string& s) {
  if (s == "auto") return io::GraphFormat::auto_detect;
  if (s == "mm" || s == "matrix_market") return io::GraphFormat::matrix_market;
  if (s == "edgelist" || s == "edge_list") return io::GraphFormat::edge_list;
  fail(ErrorCategory::usage, "unknown graph format '" + s + "'");
}

// Honors DCSBM_TW_CACHE: load a valid cache, otherwise build (and cache).
tw::TwTable load_or_build_table(std::ostream& err) {
  const char* cache = std::getenv("DCSBM_TW_CACHE");
  if (cache == nullptr || *cache == '\0') return tw::TwTable::build();
  if (std::filesystem::exists(cache)) {
    try {
      return tw::TwTable::load(cache);
    } catch (const DcsbmError&) {
      err << "note: TW cache '" << cache << "' is unusable, rebuilding\n";
    }
  }
  tw::TwTable table = tw::TwTable::build();
  table.save(cache);
  return table;
}

struct Args {
  // shared
  std::string input, params_path, out, out_dir, csv_path;
  std::string format = "auto";
  std::size_t n = 0;
  double alpha = 0.05;
  double clamp_floor = 0.0;
  std::uint64_t seed = 1;
  bool scale_flag = false;
  bool oracle = false;
  // tw
  double tw_min = -10.0, tw_max = 6.0, tw_step = 0.01, tw_p = 0.0;
  // simulate
  std::string kind;
  std::vector<std::size_t> n_list;
  std::vector<double> alpha_list;
  std::vector<double> t_grid = {0.5, 1.0, 2.0};
  std::size_t trials = 0;
  std::size_t bins = 60;
  std::size_t threads = 0;
};

std::optional<std::size_t> opt_n(std::size_t n) {
  return n > 0 ? std::optional<std::size_t>(n) : std::nullopt;
}

int cmd_validate(const Args& a, std::ostream& out) {
  const model::DcsbmParams params = io::read_params_json(a.params_path);
  const model::ValidationReport report = model::validate_params(params);
  out << "{\"ok\": " << (report.ok ? "true" : "false") << ", \"violations\": [";
  for (std::size_t i = 0; i < report.violations.size(); ++i) {
    if (i) out << ", ";
    out << '"' << report.violations[i] << '"';
  }
  out << "]}\n";
  return 0;
}

int cmd_sample(const Args& a, std::ostream& out) {
  const model::DcsbmParams params = io::read_params_json(a.params_path);
  const model::ValidationReport report = model::validate_params(params);
  if (!report.ok)
    fail(ErrorCategory::model, "invalid params: " + report.violations.front());
  const model::AdjacencyMatrix adj = model::sample_adjacency(params, a.seed);
  if (a.format == "edgelist" || a.format == "edge_list")
    io::write_edge_list(adj, a.out);
  else
    io::write_matrix_market(adj, a.out);
  out << "wrote " << a.out << " (" << adj.edge_count() << " entries)\n";
  return 0;
}

int cmd_test(const Args& a, std::ostream& out, std::ostream& err) {
  const model::AdjacencyMatrix adj =
      io::parse_graph(a.input, parse_format(a.format), opt_n(a.n));
  const tw::TwTable table = load_or_build_table(err);
  const hypothesis::TestOutcome outcome =
      hypothesis::run_test(adj, a.alpha, a.clamp_floor, table);
  const std::string json = hypothesis::to_json(outcome) + "\n";
  out << json;
  if (!a.out.empty()) io::write_file(a.out, json);
  return 0;  // the verdict lives in the JSON, never in the exit code
}

int cmd_transform(const Args& a, std::ostream& out) {
  const model::AdjacencyMatrix adj =
      io::parse_graph(a.input, parse_format(a.format), opt_n(a.n));
  transform::TransformedMatrix b;
  if (a.oracle) {
    if (a.params_path.empty())
      fail(ErrorCategory::usage, "--oracle requires --params");
    const model::DcsbmParams params = io::read_params_json(a.params_path);
    b = transform::oracle_transform(adj, params);
  } else {
    b = a.clamp_floor > 0.0 ? transform::estimated_transform(adj, a.clamp_floor)
                            : transform::estimated_transform(adj);
  }
  if (a.scale_flag) b = transform::scale(std::move(b));
  transform::write_container(b, a.out);
  if (!a.csv_path.empty()) transform::write_csv(b, a.csv_path);
  out << "wrote " << a.out << " (n=" << b.n()
      << ", clamped=" << b.clamp_count << ")\n";
  return 0;
}

int cmd_tw_table(const Args& a, std::ostream& out, std::ostream& err) {
  if (!(a.tw_step > 0.0)) fail(ErrorCategory::usage, "--step must be positive");
  if (!(a.tw_max > a.tw_min)) fail(ErrorCategory::usage, "--max must exceed --min");
  const tw::TwTable table = load_or_build_table(err);
  std::ostringstream csv;
  csv << "x,cdf,pdf\n";
  for (double x = a.tw_min; x <= a.tw_max + 1e-12; x += a.tw_step)
    csv << io::fmt_g17(x) << ',' << io::fmt_g17(table.cdf(x)) << ','
        << io::fmt_g17(table.pdf(x)) << '\n';
  if (a.out.empty())
    out << csv.str();
  else
    io::write_file(a.out, csv.str());
  return 0;
}

int cmd_tw_quantile(const Args& a, std::ostream& out, std::ostream& err) {
  const tw::TwTable table = load_or_build_table(err);
  out << io::fmt_g17(table.quantile(a.tw_p)) << "\n";
  return 0;
}

int cmd_simulate(const Args& a, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, mc::ExperimentKind> kinds = {
      {"null_calibration", mc::ExperimentKind::null_calibration},
      {"tw_histogram", mc::ExperimentKind::tw_histogram},
      {"semicircle", mc::ExperimentKind::semicircle},
      {"roc", mc::ExperimentKind::roc},
      {"concentration", mc::ExperimentKind::concentration},
  };
  const auto it = kinds.find(a.kind);
  if (it == kinds.end())
    fail(ErrorCategory::usage, "unknown experiment kind '" + a.kind + "'");

  mc::ExperimentConfig cfg;
  cfg.kind = it->second;
  cfg.master_seed = a.seed;
  cfg.clamp_floor = a.clamp_floor;
  cfg.threads = a.threads;
  cfg.bins = a.bins;
  cfg.out_dir = a.out_dir;
  if (!a.n_list.empty()) cfg.n_values = a.n_list;
  if (!a.alpha_list.empty()) cfg.alphas = a.alpha_list;

  switch (cfg.kind) {
    case mc::ExperimentKind::null_calibration: {
      cfg.trials = a.trials ? a.trials : 500;
      if (a.n_list.empty()) cfg.n_values = {2000};
      const tw::TwTable table = load_or_build_table(err);
      const mc::CalibrationResult res = mc::null_calibration(cfg, table);
      for (const mc::CalibrationRow& row : res.rows)
        out << "alpha=" << io::fmt_g17(row.alpha)
            << " rate=" << io::fmt_g17(row.rate)
            << " stderr=" << io::fmt_g17(row.stderr_) << "\n";
      break;
    }
    case mc::ExperimentKind::tw_histogram: {
      cfg.trials = a.trials ? a.trials : 2000;
      if (a.n_list.empty()) cfg.n_values = {500};
      const tw::TwTable table = load_or_build_table(err);
      const mc::TwHistogramResult res = mc::tw_histogram_experiment(cfg, table);
      out << "ks_uniform_upper=" << io::fmt_g17(res.ks_uniform_upper)
          << " mean_upper=" << io::fmt_g17(res.mean_upper) << "\n";
      break;
    }
    case mc::ExperimentKind::semicircle: {
      cfg.trials = a.trials ? a.trials : 1;
      if (a.n_list.empty()) cfg.n_values = {3000};
      const mc::SemicircleResult res = mc::semicircle_experiment(cfg);
      out << "ks_estimated=" << io::fmt_g17(res.ks_estimated)
          << " ks_oracle=" << io::fmt_g17(res.ks_oracle) << "\n";
      break;
    }
    case mc::ExperimentKind::roc: {
      cfg.trials = a.trials ? a.trials : 200;
      if (a.n_list.empty()) cfg.n_values = {300, 600, 1200};
      const std::vector<mc::RocCurve> curves = mc::roc_experiment(cfg);
      for (const mc::RocCurve& c : curves)
        out << "n=" << c.n << " auc=" << io::fmt_g17(c.auc) << "\n";
      break;
    }
    case mc::ExperimentKind::concentration: {
      cfg.trials = a.trials ? a.trials : 100;
      if (a.n_list.empty()) cfg.n_values = {500, 2000, 8000};
      const mc::ConcentrationResult res =
          mc::concentration_experiment(cfg, a.t_grid);
      for (const auto& [n, med] : res.median_scaled_error)
        out << "n=" << n << " median_sqrt_n_max_error=" << io::fmt_g17(med)
            << "\n";
      break;
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Args a;
  CLI::App app{"Spectral test for community structure in degree-heterogeneous graphs"};
  app.require_subcommand(1);

  CLI::App* validate = app.add_subcommand(
      "validate", "Check a params JSON against the model constraints");
  validate->add_option("--params", a.params_path, "params JSON path")->required();

  CLI::App* sample =
      app.add_subcommand("sample", "Draw an adjacency matrix from a params JSON");
  sample->add_option("--params", a.params_path, "params JSON path")->required();
  sample->add_option("--seed", a.seed, "sampling seed");
  sample->add_option("--out", a.out, "output graph path")->required();
  sample->add_option("--format", a.format, "mm|edgelist")->default_val("mm");

  CLI::App* test = app.add_subcommand(
      "test", "Decide one-community vs multi-community from a graph file");
  test->add_option("--input", a.input, "graph path")->required();
  test->add_option("--format", a.format, "auto|mm|edgelist");
  test->add_option("--n", a.n, "node count (edge lists only)");
  test->add_option("--alpha", a.alpha, "significance level");
  test->add_option("--clamp-floor", a.clamp_floor,
                   "probability clamp floor (default 1/n^2)");
  test->add_option("--out", a.out, "also write the outcome JSON here");

  CLI::App* transform_cmd = app.add_subcommand(
      "transform", "Write the centered/rescaled matrix container");
  transform_cmd->add_option("--input", a.input, "graph path")->required();
  transform_cmd->add_option("--format", a.format, "auto|mm|edgelist");
  transform_cmd->add_option("--n", a.n, "node count (edge lists only)");
  transform_cmd->add_option("--clamp-floor", a.clamp_floor,
                            "probability clamp floor (default 1/n^2)");
  transform_cmd->add_flag("--scale", a.scale_flag, "apply the n^{-1/2} factor");
  transform_cmd->add_flag("--oracle", a.oracle,
                          "use the oracle transform (requires --params)");
  transform_cmd->add_option("--params", a.params_path, "params JSON (oracle)");
  transform_cmd->add_option("--out", a.out, "container output path")->required();
  transform_cmd->add_option("--csv", a.csv_path, "also dump entries as CSV");

  CLI::App* tw_cmd = app.add_subcommand("tw", "Tracy-Widom table utilities");
  tw_cmd->require_subcommand(1);
  CLI::App* tw_table = tw_cmd->add_subcommand("table", "Emit (x, cdf, pdf) CSV");
  tw_table->add_option("--min", a.tw_min, "range start");
  tw_table->add_option("--max", a.tw_max, "range end");
  tw_table->add_option("--step", a.tw_step, "grid step");
  tw_table->add_option("--out", a.out, "CSV path (stdout if omitted)");
  CLI::App* tw_quantile =
      tw_cmd->add_subcommand("quantile", "Evaluate the TW1 quantile");
  tw_quantile->add_option("--p", a.tw_p, "probability")->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a reproducible batch experiment");
  simulate->add_option("kind", a.kind,
                       "null_calibration|tw_histogram|semicircle|roc|concentration")
      ->required();
  simulate->add_option("--n", a.n_list, "node counts")->expected(-1);
  simulate->add_option("--trials", a.trials, "trials per class");
  simulate->add_option("--alpha", a.alpha_list, "significance levels")->expected(-1);
  simulate->add_option("--seed", a.seed, "master seed");
  simulate->add_option("--clamp-floor", a.clamp_floor,
                       "probability clamp floor (default 1/n^2)");
  simulate->add_option("--bins", a.bins, "histogram bins");
  simulate->add_option("--threads", a.threads, "worker cap (default all cores)");
  simulate->add_option("--t-grid", a.t_grid, "t values (concentration)")
      ->expected(-1);
  simulate->add_option("--out-dir", a.out_dir, "output directory")->required();

  std::vector<const char*> argv;
  argv.push_back("dcsbm");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(a, out);
    if (app.got_subcommand(sample)) return cmd_sample(a, out);
    if (app.got_subcommand(test)) return cmd_test(a, out, err);
    if (app.got_subcommand(transform_cmd)) return cmd_transform(a, out);
    if (app.got_subcommand(tw_cmd)) {
      if (tw_cmd->got_subcommand(tw_table)) return cmd_tw_table(a, out, err);
      return cmd_tw_quantile(a, out, err);
    }
    if (app.got_subcommand(simulate)) return cmd_simulate(a, out, err);
    err << "error: usage: no subcommand\n";
    return 1;
  } catch (const DcsbmError& e) {
    err << "error: " << to_string(e.category()) << ": " << e.what() << "\n";
    return e.category() == ErrorCategory::usage ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dcsbm::cli
