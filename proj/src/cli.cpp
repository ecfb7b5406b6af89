#include "pinrefine/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pinrefine/parallel.hpp"
#include "pinrefine/pipeline.hpp"

namespace pinrefine {

namespace {

struct CommonOptions {
  std::string config;
  std::optional<double> th1;
  std::optional<double> th2;
  std::optional<double> th3;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::vector<std::string> networks;
  std::string th1_list;
  std::string th2_list;
  std::string th3_list;
};

void add_common(CLI::App* sub, CommonOptions& o, bool thresholds) {
  sub->add_option("--config", o.config, "Run configuration (key = value)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Output directory (overrides the config)");
  sub->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
  if (thresholds) {
    sub->add_option("--th1", o.th1, "Conservatism threshold");
    sub->add_option("--th2", o.th2, "Subcellular-localization threshold");
    sub->add_option("--th3", o.th3, "Topology threshold");
  }
}

PipelineConfig build_config(const CommonOptions& o) {
  PipelineConfig cfg = load_config(o.config);
  if (o.th1) cfg.thresholds.conservatism = *o.th1;
  if (o.th2) cfg.thresholds.subcellular = *o.th2;
  if (o.th3) cfg.thresholds.topology = *o.th3;
  if (o.out) cfg.out_dir = *o.out;
  if (o.threads) {
    cfg.centrality.threads = *o.threads;
  } else if (std::getenv("PINREFINE_THREADS") != nullptr) {
    cfg.centrality.threads = threads_from_env();
  }
  for (double th : {cfg.thresholds.conservatism, cfg.thresholds.subcellular, cfg.thresholds.topology}) {
    if (!std::isfinite(th)) throw ConfigError("thresholds must be finite");
  }
  validate_config(cfg);
  return cfg;
}

std::vector<double> parse_threshold_list(const std::string& name, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const double d = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(d)) throw std::invalid_argument(item);
      out.push_back(d);
    } catch (const std::exception&) {
      throw ConfigError(name + ": '" + item + "' is not a finite number");
    }
  }
  if (out.empty()) throw ConfigError(name + " is empty");
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Protein interaction network refinement and essential protein ranking", "pinrefine"};
  app.require_subcommand(1);

  CommonOptions o;
  auto* refine = app.add_subcommand("refine", "Build the S-PIN, D-PIN and RD-PIN");
  auto* cluster = app.add_subcommand("cluster", "Cluster the maximal component of the RD-PIN");
  auto* score = app.add_subcommand("score-modules", "Score modules by Corr, NSL and TF");
  auto* build_cm = app.add_subcommand("build-cm", "Select critical modules and build the CM-PIN");
  auto* centrality = app.add_subcommand("centrality", "Rank proteins by every centrality method");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate rankings against the essential list");
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage end to end");
  auto* sweep = app.add_subcommand("sweep", "Grid over critical-module thresholds");

  add_common(refine, o, false);
  add_common(cluster, o, false);
  add_common(score, o, false);
  add_common(build_cm, o, true);
  add_common(centrality, o, false);
  add_common(evaluate_cmd, o, false);
  add_common(pipeline, o, true);
  add_common(sweep, o, false);
  for (auto* sub : {centrality, evaluate_cmd}) {
    sub->add_option("--network", o.networks, "s_pin, d_pin, rd_pin or cm_pin (repeatable; default all)");
  }
  sweep->add_option("--th1-list", o.th1_list, "Comma-separated th1 values")->required();
  sweep->add_option("--th2-list", o.th2_list, "Comma-separated th2 values")->required();
  sweep->add_option("--th3-list", o.th3_list, "Comma-separated th3 values")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    const PipelineConfig cfg = build_config(o);
    if (*refine) {
      run_refine_stage(cfg, err);
    } else if (*cluster) {
      run_cluster_stage(cfg, err);
    } else if (*score) {
      run_score_stage(cfg, err);
    } else if (*build_cm) {
      run_build_cm_stage(cfg, err);
    } else if (*centrality) {
      run_centrality_stage(cfg, o.networks, err);
    } else if (*evaluate_cmd) {
      run_evaluate_stage(cfg, o.networks, err);
    } else if (*pipeline) {
      run_pipeline(cfg, err);
      out << "outputs written to " << cfg.out_dir.string() << '\n';
    } else if (*sweep) {
      const auto th1s = parse_threshold_list("--th1-list", o.th1_list);
      const auto th2s = parse_threshold_list("--th2-list", o.th2_list);
      const auto th3s = parse_threshold_list("--th3-list", o.th3_list);
      const auto rows = sweep_thresholds(cfg, th1s, th2s, th3s, err);
      std::filesystem::create_directories(cfg.out_dir);
      const auto path = cfg.out_dir / "sweep.csv";
      std::ofstream file(path);
      if (!file) throw StageError("sweep", "cannot write " + path.string());
      write_sweep_csv(file, rows, cfg.sweep_topk);
      out << "sweep written to " << path.string() << '\n';
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const StageError& e) {
    err << "stage failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace pinrefine
