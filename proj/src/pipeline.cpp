#include "pinrefine/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "pinrefine/format.hpp"

namespace pinrefine {

StageError::StageError(std::string stage, const std::string& message)
    : Error(stage + ": " + message), stage_(std::move(stage)) {}

namespace {

namespace fs = std::filesystem;

// Runs fn, converting any non-stage failure into a StageError for `stage`.
template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw Error("error while writing " + path.string());
}

fs::path tier_path(const PipelineConfig& cfg, const std::string& tier) { return cfg.out_dir / (tier + ".tsv"); }

std::set<ProteinId> read_universe(const PipelineConfig& cfg) {
  auto in = open_input(cfg.out_dir / "nodes.tsv");
  std::set<ProteinId> universe;
  for (auto& id : parse_essential_list(in)) universe.insert(id);
  return universe;
}

Graph load_tier(const PipelineConfig& cfg, const std::string& tier, const std::set<ProteinId>& universe) {
  auto in = open_input(tier_path(cfg, tier));
  const Graph g = build_graph(parse_edge_list(in).edges, universe);
  if (g.node_count() != universe.size()) {
    throw Error(tier + " contains proteins that are not listed in nodes.tsv");
  }
  return g;
}

EdgeList load_edges(const PipelineConfig& cfg, std::ostream& log) {
  auto in = open_input(cfg.edges);
  auto parsed = parse_edge_list(in);
  log << "[ingest] edges: " << parsed.stats.data_rows << " rows, " << parsed.stats.kept << " kept, "
      << parsed.stats.self_loops_dropped << " self-loops dropped, " << parsed.stats.duplicates_dropped
      << " duplicates dropped\n";
  return std::move(parsed.edges);
}

ExpressionTable load_expression(const PipelineConfig& cfg, std::ostream& log) {
  auto in = open_input(cfg.expression);
  auto parsed = parse_expression(in, cfg.time_points);
  for (const auto& w : parsed.warnings) log << "[ingest] warning: " << w << '\n';
  return std::move(parsed.table);
}

LocalizationMap load_localization(const PipelineConfig& cfg) {
  auto in = open_input(cfg.localization);
  return parse_localization(in, cfg.compartments);
}

HomologyMap load_homology(const PipelineConfig& cfg) {
  auto in = open_input(cfg.homology);
  return parse_homology(in);
}

EssentialSet load_essential(const PipelineConfig& cfg) {
  auto in = open_input(cfg.essential);
  return parse_essential_list(in);
}

void log_filter(std::ostream& log, const char* tier, const FilterLog& f) {
  log << "[refine] " << tier << ": kept " << f.kept << ", removed " << f.removed_by_rule << " by rule, "
      << f.removed_missing_data << " for missing data\n";
}

void write_filter_log(std::ostream& out, const RefinedTiers& tiers) {
  out << "tier\tkept\tremoved_by_rule\tremoved_missing_data\n";
  out << "d_pin\t" << tiers.dpin_log.kept << '\t' << tiers.dpin_log.removed_by_rule << '\t'
      << tiers.dpin_log.removed_missing_data << '\n';
  out << "rd_pin\t" << tiers.rdpin_log.kept << '\t' << tiers.rdpin_log.removed_by_rule << '\t'
      << tiers.rdpin_log.removed_missing_data << '\n';
}

void write_tiers(const PipelineConfig& cfg, const RefinedTiers& tiers) {
  write_file(cfg.out_dir / "nodes.tsv", [&](std::ostream& out) {
    for (const auto& id : tiers.spin.ids()) out << id.str() << '\n';
  });
  write_file(tier_path(cfg, "s_pin"), [&](std::ostream& out) { write_graph(out, tiers.spin); });
  write_file(tier_path(cfg, "d_pin"), [&](std::ostream& out) { write_graph(out, tiers.dpin); });
  write_file(tier_path(cfg, "rd_pin"), [&](std::ostream& out) { write_graph(out, tiers.rdpin); });
  write_file(cfg.out_dir / "filter_log.tsv", [&](std::ostream& out) { write_filter_log(out, tiers); });
}

void check_cm_containment(const Graph& rdpin, const ModuleAnalysis& modules, const Graph& cmpin) {
  check_refinement(rdpin, cmpin, "CM-PIN");
  for (const auto& [u, v] : cmpin.edges()) {
    const auto a = modules.clustered.index_of(cmpin.id(u));
    const auto b = modules.clustered.index_of(cmpin.id(v));
    if (!a || !b || !modules.clustered.has_edge(*a, *b)) {
      throw Error("CM-PIN edge " + cmpin.id(u).str() + "-" + cmpin.id(v).str() +
                  " lies outside the maximal component of the RD-PIN");
    }
  }
}

// Metrics identities that must hold at cutoff k = P in every emitted report.
void check_report_identities(const EvalReport& r) {
  const auto& m = r.metrics;
  if (m.sn != m.ppv || m.sp != m.npv || m.fm != m.sn) {
    throw Error(std::string(method_name(r.method)) + ": SN/PPV, SP/NPV or FM/SN identity violated at k = P");
  }
  for (std::size_t i = 1; i < r.jackknife.size(); ++i) {
    if (r.jackknife[i] < r.jackknife[i - 1]) throw Error("jackknife curve decreased");
  }
  if (!r.jackknife.empty() && r.jackknife.back() > r.positives) throw Error("jackknife curve exceeds P");
}

std::vector<Ranking> rank_tier(const Graph& g, const PipelineConfig& cfg) {
  std::vector<Ranking> rankings;
  rankings.reserve(kAllMethods.size());
  for (auto method : kAllMethods) rankings.push_back(compute_ranking(g, method, cfg.centrality));
  return rankings;
}

void write_rankings(const PipelineConfig& cfg, const std::string& tier, const std::vector<Ranking>& rankings) {
  for (const auto& r : rankings) {
    write_file(cfg.out_dir / "rankings" / (tier + "_" + std::string(method_name(r.method)) + ".tsv"),
               [&](std::ostream& out) { write_ranking(out, r); });
  }
}

std::vector<EvalReport> evaluate_tier(const PipelineConfig& cfg, const std::string& tier,
                                      const std::vector<Ranking>& rankings, const EssentialSet& gold) {
  std::vector<EvalReport> reports;
  const fs::path eval_dir = cfg.out_dir / "eval";
  for (const auto& r : rankings) {
    auto report = evaluate(r, gold, cfg.topk);
    check_report_identities(report);
    const std::string stem = tier + "_" + std::string(method_name(r.method));
    if (report.positives > 0) {
      const auto curve = pr_curve_and_auc(r, gold);
      write_file(eval_dir / "curves" / (stem + "_pr.csv"), [&](std::ostream& out) { write_pr_curve_csv(out, curve); });
    }
    write_file(eval_dir / "curves" / (stem + "_jackknife.csv"),
               [&](std::ostream& out) { write_jackknife_csv(out, report.jackknife); });
    reports.push_back(std::move(report));
  }
  write_file(eval_dir / (tier + "_metrics.csv"), [&](std::ostream& out) { write_metrics_csv(out, reports); });
  write_file(eval_dir / (tier + "_topk.csv"), [&](std::ostream& out) { write_topk_csv(out, reports, cfg.topk); });
  return reports;
}

void write_metadata(std::ostream& out, const PipelineConfig& cfg) {
  out << "tool\tpinrefine 1.0.0\n";
  out << "time_points\t" << cfg.time_points << '\n';
  out << "activity_threshold\tmean + population standard deviation (divide by T); active iff value > threshold\n";
  out << "missing_data\tedges with an endpoint lacking expression or localization data are removed\n";
  out << "clustering\tdeterministic fast unfolding, ascending node order, strict gain, ties to lowest module id\n";
  out << "nsl\tnucleus annotation counted 0/1 per protein\n";
  out << "cm_edges\tkept iff both endpoints are in critical modules (any critical module)\n";
  out << "th1\t" << sig6(cfg.thresholds.conservatism) << '\n';
  out << "th2\t" << sig6(cfg.thresholds.subcellular) << '\n';
  out << "th3\t" << sig6(cfg.thresholds.topology) << '\n';
  out << "dmnc_epsilon\t" << sig6(cfg.centrality.dmnc_epsilon) << '\n';
  out << "tp_sigma\t" << sig6(cfg.centrality.tp_sigma) << '\n';
  out << "damping\t" << sig6(cfg.centrality.damping) << '\n';
  out << "tolerance\t" << sig6(cfg.centrality.tolerance) << '\n';
  out << "max_iterations\t" << cfg.centrality.max_iterations << '\n';
  out << "closeness\tcomponent-restricted, Wasserman-Faust scaled\n";
  out << "leaderrank\tlazy power iteration (s + Ps) / 2 on the ground-augmented graph\n";
  out << "prauc\taverage precision (step rule, no interpolation)\n";
  out << "rank_ties\tascending protein id\n";
  out << "seeds\tnone\n";
}

void mark_failed(const PipelineConfig& cfg, const StageError& e) {
  try {
    write_file(cfg.out_dir / "FAILED", [&](std::ostream& out) {
      out << "stage\t" << e.stage() << '\n';
      out << "error\t" << e.what() << '\n';
    });
  } catch (const std::exception&) {
    // The output directory itself may be unwritable; the error still propagates.
  }
}

template <typename Fn>
auto with_failure_marker(const PipelineConfig& cfg, Fn&& fn) -> decltype(fn()) {
  std::error_code ec;
  fs::remove(cfg.out_dir / "FAILED", ec);
  try {
    return fn();
  } catch (const StageError& e) {
    mark_failed(cfg, e);
    throw;
  }
}

std::vector<std::string> resolve_tier_list(const std::vector<std::string>& tiers) {
  if (tiers.empty()) return {kTierNames.begin(), kTierNames.end()};
  for (const auto& t : tiers) {
    if (std::find(kTierNames.begin(), kTierNames.end(), t) == kTierNames.end()) {
      throw ConfigError("unknown network '" + t + "' (expected s_pin, d_pin, rd_pin or cm_pin)");
    }
  }
  return tiers;
}

}  // namespace

RefinedTiers refine_tiers(const EdgeList& edges, const ExpressionTable& expression,
                          const LocalizationMap& localization, std::size_t time_points) {
  RefinedTiers tiers;
  tiers.spin = build_graph(edges);
  auto d = build_dpin(tiers.spin, expression, time_points);
  tiers.dpin = std::move(d.graph);
  tiers.dpin_log = d.log;
  auto rd = build_rdpin(tiers.dpin, localization);
  tiers.rdpin = std::move(rd.graph);
  tiers.rdpin_log = rd.log;
  check_refinement(tiers.spin, tiers.dpin, "D-PIN");
  check_refinement(tiers.dpin, tiers.rdpin, "RD-PIN");
  return tiers;
}

ModuleAnalysis cluster_rdpin(const Graph& rdpin) {
  if (rdpin.edge_count() == 0) throw Error("the RD-PIN has no edges to cluster");
  ModuleAnalysis a;
  a.clustered = build_graph(maximal_component_edges(rdpin));
  a.partition = fast_unfolding(a.clustered, &a.trace);
  return a;
}

ModuleAnalysis analyze_modules(const Graph& rdpin, const AnnotationStore& annotations) {
  ModuleAnalysis a = cluster_rdpin(rdpin);
  a.scores = score_modules(a.clustered, a.partition, annotations);
  return a;
}

CmResult critical_network(const Graph& rdpin, const ModuleAnalysis& modules, const Thresholds& thresholds) {
  CmResult r;
  r.selection = select_critical(modules.scores, thresholds);
  r.cmpin = build_cmpin(rdpin, modules.clustered, modules.partition, r.selection);
  check_cm_containment(rdpin, modules, r.cmpin);
  return r;
}

void write_network_stats(std::ostream& out, const std::vector<std::pair<std::string, const Graph*>>& tiers) {
  out << "network\tinteractions\tavg_degree\tavg_clustering\tdensity\tnodes\tmax_component_interactions\n";
  for (const auto& [name, g] : tiers) {
    const auto s = graph_stats(*g);
    const std::size_t max_component = g->node_count() == 0 ? 0 : maximal_component_edges(*g).size();
    out << name << '\t' << s.edge_count << '\t' << sig6(s.avg_degree) << '\t' << sig6(s.avg_clustering) << '\t'
        << sig6(s.density) << '\t' << s.node_count << '\t' << max_component << '\n';
  }
}

PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  return with_failure_marker(cfg, [&] {
    PipelineResult result;
    auto& tiers = result.tiers;

    const EdgeList edges = in_stage("refine/S-PIN", [&] { return load_edges(cfg, log); });
    in_stage("refine/S-PIN", [&] { tiers.spin = build_graph(edges); });
    log << "[refine] S-PIN: " << tiers.spin.node_count() << " proteins, " << tiers.spin.edge_count()
        << " interactions\n";

    in_stage("refine/D-PIN", [&] {
      const auto expression = load_expression(cfg, log);
      auto d = build_dpin(tiers.spin, expression, cfg.time_points);
      tiers.dpin = std::move(d.graph);
      tiers.dpin_log = d.log;
      check_refinement(tiers.spin, tiers.dpin, "D-PIN");
    });
    log_filter(log, "D-PIN", tiers.dpin_log);

    in_stage("refine/RD-PIN", [&] {
      const auto localization = load_localization(cfg);
      auto rd = build_rdpin(tiers.dpin, localization);
      tiers.rdpin = std::move(rd.graph);
      tiers.rdpin_log = rd.log;
      check_refinement(tiers.dpin, tiers.rdpin, "RD-PIN");
    });
    log_filter(log, "RD-PIN", tiers.rdpin_log);
    in_stage("refine/write", [&] { write_tiers(cfg, tiers); });

    auto& modules = result.modules;
    in_stage("community", [&] { modules = cluster_rdpin(tiers.rdpin); });
    log << "[community] " << modules.partition.module_count << " modules over " << modules.clustered.node_count()
        << " proteins, Q = " << sig6(modules.partition.modularity) << '\n';

    AnnotationStore annotations;
    in_stage("critical/scores", [&] {
      annotations.localization = load_localization(cfg);
      annotations.homology = load_homology(cfg);
      annotations.essential = load_essential(cfg);
      modules.scores = score_modules(modules.clustered, modules.partition, annotations);
      write_file(cfg.out_dir / "partition.tsv",
                 [&](std::ostream& out) { write_partition(out, modules.clustered, modules.partition); });
      write_file(cfg.out_dir / "module_scores.tsv",
                 [&](std::ostream& out) { write_module_scores(out, modules.scores); });
    });

    in_stage("critical/CM-PIN", [&] {
      result.cm = critical_network(tiers.rdpin, modules, cfg.thresholds);
      write_file(cfg.out_dir / "selection.txt", [&](std::ostream& out) { write_selection(out, result.cm.selection); });
      write_file(tier_path(cfg, "cm_pin"), [&](std::ostream& out) { write_graph(out, result.cm.cmpin); });
      write_file(cfg.out_dir / "network_stats.tsv", [&](std::ostream& out) {
        write_network_stats(out, {{"s_pin", &tiers.spin},
                                  {"d_pin", &tiers.dpin},
                                  {"rd_pin", &tiers.rdpin},
                                  {"cm_pin", &result.cm.cmpin}});
      });
    });
    log << "[critical] " << result.cm.selection.critical.size() << " critical modules, CM-PIN has "
        << result.cm.cmpin.edge_count() << " interactions\n";

    const std::array<const Graph*, 4> graphs = {&tiers.spin, &tiers.dpin, &tiers.rdpin, &result.cm.cmpin};
    for (std::size_t t = 0; t < graphs.size(); ++t) {
      const std::string tier = kTierNames[t];
      const auto rankings = in_stage("centrality/" + tier, [&] {
        auto r = rank_tier(*graphs[t], cfg);
        write_rankings(cfg, tier, r);
        return r;
      });
      result.reports[tier] =
          in_stage("eval/" + tier, [&] { return evaluate_tier(cfg, tier, rankings, annotations.essential); });
      log << "[eval] " << tier << " done\n";
    }

    in_stage("report", [&] {
      if (!cfg.reference.empty()) {
        write_file(cfg.out_dir / "reference_comparison.tsv",
                   [&](std::ostream& out) { write_reference_comparison(out, cfg.reference, result); });
      }
      write_file(cfg.out_dir / "run_metadata.txt", [&](std::ostream& out) { write_metadata(out, cfg); });
    });
    return result;
  });
}

void run_refine_stage(const PipelineConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  with_failure_marker(cfg, [&] {
    const EdgeList edges = in_stage("refine/S-PIN", [&] { return load_edges(cfg, log); });
    const auto expression = in_stage("refine/D-PIN", [&] { return load_expression(cfg, log); });
    const auto localization = in_stage("refine/RD-PIN", [&] { return load_localization(cfg); });
    const auto tiers = in_stage("refine", [&] { return refine_tiers(edges, expression, localization, cfg.time_points); });
    log_filter(log, "D-PIN", tiers.dpin_log);
    log_filter(log, "RD-PIN", tiers.rdpin_log);
    in_stage("refine/write", [&] {
      write_tiers(cfg, tiers);
      write_file(cfg.out_dir / "network_stats.tsv", [&](std::ostream& out) {
        write_network_stats(out, {{"s_pin", &tiers.spin}, {"d_pin", &tiers.dpin}, {"rd_pin", &tiers.rdpin}});
      });
    });
  });
}

void run_cluster_stage(const PipelineConfig& cfg, std::ostream& log) {
  with_failure_marker(cfg, [&] {
    in_stage("community", [&] {
      const auto rdpin = load_tier(cfg, "rd_pin", read_universe(cfg));
      const auto modules = cluster_rdpin(rdpin);
      write_file(cfg.out_dir / "partition.tsv",
                 [&](std::ostream& out) { write_partition(out, modules.clustered, modules.partition); });
      log << "[community] " << modules.partition.module_count << " modules, Q = " << sig6(modules.partition.modularity)
          << '\n';
    });
  });
}

namespace {

// Reloads the RD-PIN, its maximal component and the saved partition, then
// rescores the modules from the annotation inputs.
ModuleAnalysis reload_modules(const PipelineConfig& cfg, Graph& rdpin, AnnotationStore& annotations) {
  rdpin = load_tier(cfg, "rd_pin", read_universe(cfg));
  ModuleAnalysis modules;
  modules.clustered = build_graph(maximal_component_edges(rdpin));
  auto in = open_input(cfg.out_dir / "partition.tsv");
  modules.partition = read_partition(in, modules.clustered);
  annotations.localization = load_localization(cfg);
  annotations.homology = load_homology(cfg);
  annotations.essential = load_essential(cfg);
  modules.scores = score_modules(modules.clustered, modules.partition, annotations);
  return modules;
}

}  // namespace

void run_score_stage(const PipelineConfig& cfg, std::ostream& log) {
  with_failure_marker(cfg, [&] {
    in_stage("critical/scores", [&] {
      Graph rdpin;
      AnnotationStore annotations;
      const auto modules = reload_modules(cfg, rdpin, annotations);
      write_file(cfg.out_dir / "module_scores.tsv",
                 [&](std::ostream& out) { write_module_scores(out, modules.scores); });
      log << "[critical] scored " << modules.scores.size() << " modules\n";
    });
  });
}

void run_build_cm_stage(const PipelineConfig& cfg, std::ostream& log) {
  with_failure_marker(cfg, [&] {
    in_stage("critical/CM-PIN", [&] {
      Graph rdpin;
      AnnotationStore annotations;
      const auto modules = reload_modules(cfg, rdpin, annotations);
      const auto cm = critical_network(rdpin, modules, cfg.thresholds);
      write_file(cfg.out_dir / "selection.txt", [&](std::ostream& out) { write_selection(out, cm.selection); });
      write_file(tier_path(cfg, "cm_pin"), [&](std::ostream& out) { write_graph(out, cm.cmpin); });
      const auto universe = read_universe(cfg);
      const auto spin = load_tier(cfg, "s_pin", universe);
      const auto dpin = load_tier(cfg, "d_pin", universe);
      write_file(cfg.out_dir / "network_stats.tsv", [&](std::ostream& out) {
        write_network_stats(out, {{"s_pin", &spin}, {"d_pin", &dpin}, {"rd_pin", &rdpin}, {"cm_pin", &cm.cmpin}});
      });
      log << "[critical] " << cm.selection.critical.size() << " critical modules, CM-PIN has "
          << cm.cmpin.edge_count() << " interactions\n";
    });
  });
}

void run_centrality_stage(const PipelineConfig& cfg, const std::vector<std::string>& tiers, std::ostream& log) {
  const auto names = resolve_tier_list(tiers);
  with_failure_marker(cfg, [&] {
    const auto universe = in_stage("centrality", [&] { return read_universe(cfg); });
    for (const auto& tier : names) {
      in_stage("centrality/" + tier, [&] {
        const auto g = load_tier(cfg, tier, universe);
        write_rankings(cfg, tier, rank_tier(g, cfg));
      });
      log << "[centrality] " << tier << " done\n";
    }
  });
}

void run_evaluate_stage(const PipelineConfig& cfg, const std::vector<std::string>& tiers, std::ostream& log) {
  const auto names = resolve_tier_list(tiers);
  with_failure_marker(cfg, [&] {
    const auto gold = in_stage("eval", [&] { return load_essential(cfg); });
    for (const auto& tier : names) {
      in_stage("eval/" + tier, [&] {
        std::vector<Ranking> rankings;
        for (auto method : kAllMethods) {
          auto in = open_input(cfg.out_dir / "rankings" / (tier + "_" + std::string(method_name(method)) + ".tsv"));
          rankings.push_back(read_ranking(in, method));
        }
        evaluate_tier(cfg, tier, rankings, gold);
      });
      log << "[eval] " << tier << " done\n";
    }
  });
}

std::vector<SweepRow> sweep_thresholds(const PipelineConfig& cfg, const std::vector<double>& th1s,
                                       const std::vector<double>& th2s, const std::vector<double>& th3s,
                                       std::ostream& log) {
  if (th1s.empty() || th2s.empty() || th3s.empty()) throw ConfigError("sweep needs nonempty th1, th2 and th3 lists");
  validate_config(cfg);

  const EdgeList edges = in_stage("refine/S-PIN", [&] { return load_edges(cfg, log); });
  const auto expression = in_stage("refine/D-PIN", [&] { return load_expression(cfg, log); });
  AnnotationStore annotations;
  in_stage("refine/RD-PIN", [&] { annotations.localization = load_localization(cfg); });
  const auto tiers = in_stage("refine", [&] {
    return refine_tiers(edges, expression, annotations.localization, cfg.time_points);
  });
  auto modules = in_stage("community", [&] { return cluster_rdpin(tiers.rdpin); });
  in_stage("critical/scores", [&] {
    annotations.homology = load_homology(cfg);
    annotations.essential = load_essential(cfg);
    modules.scores = score_modules(modules.clustered, modules.partition, annotations);
  });

  std::vector<SweepRow> rows;
  for (double th1 : th1s) {
    for (double th2 : th2s) {
      for (double th3 : th3s) {
        SweepRow row;
        row.thresholds = {th1, th2, th3};
        try {
          const auto cm = critical_network(tiers.rdpin, modules, row.thresholds);
          const auto ranking = compute_ranking(cm.cmpin, cfg.sweep_method, cfg.centrality);
          const auto report = evaluate(ranking, annotations.essential, cfg.sweep_topk);
          row.critical_modules = cm.selection.critical.size();
          row.topk = report.topk;
          row.top_p = report.metrics.counts.tp;
          row.acc = report.metrics.acc;
          row.prauc = report.prauc;
          row.ok = true;
        } catch (const std::exception& e) {
          row.error = e.what();
          log << "[sweep] th1=" << sig6(th1) << " th2=" << sig6(th2) << " th3=" << sig6(th3)
              << " FAILED: " << e.what() << '\n';
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const std::vector<std::size_t>& ks) {
  out << "th1,th2,th3,critical_modules";
  for (std::size_t k : ks) out << ",top" << k;
  out << ",topP,ACC,PRAUC,status\n";
  for (const auto& row : rows) {
    out << sig6(row.thresholds.conservatism) << ',' << sig6(row.thresholds.subcellular) << ','
        << sig6(row.thresholds.topology) << ',';
    if (!row.ok) {
      out << std::string(ks.size() + 4, ',') << "FAILED\n";
      continue;
    }
    out << row.critical_modules;
    for (std::size_t k : ks) {
      out << ',';
      const auto it = row.topk.find(k);
      if (it != row.topk.end()) out << it->second;
    }
    out << ',' << row.top_p << ',' << sig6(row.acc) << ',' << sig6(row.prauc) << ",ok\n";
  }
}

void write_reference_comparison(std::ostream& out, const std::string& dataset, const PipelineResult& result) {
  struct Row {
    std::string metric;
    double observed;
    double reference;
    bool exact;  // integer count compared exactly; otherwise within 1%
  };
  const auto& t = result.tiers;
  const auto& cm = result.cm.cmpin;
  const auto spin_stats = graph_stats(t.spin);
  const auto max_component = [](const Graph& g) {
    return g.node_count() == 0 ? 0.0 : static_cast<double>(maximal_component_edges(g).size());
  };
  auto lid_cm = [&](auto getter) -> double {
    const auto it = result.reports.find("cm_pin");
    if (it == result.reports.end()) return std::nan("");
    for (const auto& r : it->second) {
      if (r.method == CentralityMethod::LID) return getter(r);
    }
    return std::nan("");
  };
  const double lid_top600 = lid_cm([](const EvalReport& r) {
    const auto k = r.topk.find(600);
    return k == r.topk.end() ? std::nan("") : static_cast<double>(k->second);
  });
  const double lid_prauc = lid_cm([](const EvalReport& r) { return r.prauc; });
  const double modules = static_cast<double>(result.modules.partition.module_count);
  const double q = result.modules.partition.modularity;
  const double critical = static_cast<double>(result.cm.selection.critical.size());

  std::vector<Row> rows;
  if (dataset == "dip") {
    rows = {
        {"s_pin.proteins", static_cast<double>(t.spin.node_count()), 4746, true},
        {"s_pin.interactions", static_cast<double>(t.spin.edge_count()), 15166, true},
        {"s_pin.avg_degree", spin_stats.avg_degree, 6.3911, false},
        {"s_pin.avg_clustering", spin_stats.avg_clustering, 0.0923, false},
        {"s_pin.density", spin_stats.density, 0.0013, false},
        {"s_pin.max_component_interactions", max_component(t.spin), 15123, true},
        {"d_pin.interactions", static_cast<double>(t.dpin.edge_count()), 9514, true},
        {"d_pin.max_component_interactions", max_component(t.dpin), 9436, true},
        {"rd_pin.interactions", static_cast<double>(t.rdpin.edge_count()), 5175, true},
        {"rd_pin.max_component_interactions", max_component(t.rdpin), 4953, true},
        {"cm_pin.interactions", static_cast<double>(cm.edge_count()), 3765, true},
        {"cm_pin.avg_degree", graph_stats(cm).avg_degree, 1.5866, false},
        {"modules", modules, 26, true},
        {"modularity", q, 0.7408, false},
        {"critical_modules", critical, 15, true},
        {"cm_pin.LID.top600", lid_top600, 405, true},
        {"cm_pin.LID.PRAUC", lid_prauc, 0.5720, false},
    };
  } else if (dataset == "biogrid") {
    rows = {
        {"s_pin.proteins", static_cast<double>(t.spin.node_count()), 5616, true},
        {"s_pin.interactions", static_cast<double>(t.spin.edge_count()), 52833, true},
        {"s_pin.max_component_interactions", max_component(t.spin), 52832, true},
        {"d_pin.interactions", static_cast<double>(t.dpin.edge_count()), 32735, true},
        {"d_pin.max_component_interactions", max_component(t.dpin), 32730, true},
        {"rd_pin.interactions", static_cast<double>(t.rdpin.edge_count()), 18362, true},
        {"rd_pin.max_component_interactions", max_component(t.rdpin), 18330, true},
        {"modules", modules, 19, true},
        {"modularity", q, 0.6532, false},
        {"critical_modules", critical, 15, true},
    };
  } else {
    throw Error("unknown reference dataset '" + dataset + "'");
  }

  out << "# reference values depend on dataset snapshots and clustering visit order; rows are flagged, not asserted\n";
  out << "metric\tobserved\treference\trelative_difference\tflag\n";
  for (const auto& row : rows) {
    const double rel = row.reference == 0.0 ? std::abs(row.observed) : std::abs(row.observed - row.reference) / std::abs(row.reference);
    const bool match = row.exact ? row.observed == row.reference : rel <= 0.01;
    out << row.metric << '\t' << (std::isnan(row.observed) ? std::string("n/a") : sig6(row.observed)) << '\t'
        << sig6(row.reference) << '\t' << (std::isnan(rel) ? std::string("n/a") : sig6(rel)) << '\t'
        << (match ? "match" : "DEVIATES") << '\n';
  }
}

}  // namespace pinrefine
