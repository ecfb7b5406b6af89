#pragma once

// End-to-end orchestration: S-PIN -> D-PIN -> RD-PIN -> CM-PIN, then
// centrality rankings and evaluation on every tier.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pinrefine/centrality.hpp"
#include "pinrefine/community.hpp"
#include "pinrefine/critical.hpp"
#include "pinrefine/eval.hpp"
#include "pinrefine/graph.hpp"
#include "pinrefine/ingest.hpp"
#include "pinrefine/refine.hpp"

namespace pinrefine {

// Invalid configuration or usage. Maps to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Failure inside a named pipeline stage. Maps to exit code 2.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message);
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct PipelineConfig {
  std::filesystem::path edges;
  std::filesystem::path expression;
  std::filesystem::path localization;
  std::filesystem::path homology;
  std::filesystem::path essential;
  std::size_t time_points = kDefaultTimePoints;
  // NSL is a 0/1 fraction here, so th2 lives on [0, 1].
  Thresholds thresholds{-0.005, 0.5, 0.25};
  std::vector<std::string> compartments = default_compartments();
  CentralityOptions centrality;
  std::vector<std::size_t> topk = kDefaultTopK;
  std::filesystem::path out_dir = "pinrefine_out";
  CentralityMethod sweep_method = CentralityMethod::LID;
  std::vector<std::size_t> sweep_topk = {100, 600};
  // "dip" or "biogrid" adds a side-by-side table of reference
  // values for that dataset; empty disables it.
  std::string reference;
};

// Flat "key = value" file; '#' starts a comment. Relative paths resolve
// against the config file's directory.
PipelineConfig load_config(const std::filesystem::path& path);
void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value,
                        const std::filesystem::path& base_dir = {});
void validate_config(const PipelineConfig& cfg);

inline constexpr std::array<const char*, 4> kTierNames = {"s_pin", "d_pin", "rd_pin", "cm_pin"};

struct RefinedTiers {
  Graph spin;
  Graph dpin;
  Graph rdpin;
  FilterLog dpin_log;
  FilterLog rdpin_log;
};

// S-PIN, D-PIN and RD-PIN over the S-PIN node set, with the containment
// checks applied.
RefinedTiers refine_tiers(const EdgeList& edges, const ExpressionTable& expression,
                          const LocalizationMap& localization, std::size_t time_points);

struct ModuleAnalysis {
  Graph clustered;  // maximal component of the RD-PIN
  Partition partition;
  UnfoldingTrace trace;
  std::vector<ModuleScore> scores;
};

// Clusters the maximal component of the RD-PIN; scores are left empty.
ModuleAnalysis cluster_rdpin(const Graph& rdpin);
// cluster_rdpin followed by score_modules.
ModuleAnalysis analyze_modules(const Graph& rdpin, const AnnotationStore& annotations);

struct CmResult {
  CriticalSelection selection;
  Graph cmpin;
};

CmResult critical_network(const Graph& rdpin, const ModuleAnalysis& modules, const Thresholds& thresholds);

struct PipelineResult {
  RefinedTiers tiers;
  ModuleAnalysis modules;
  CmResult cm;
  std::map<std::string, std::vector<EvalReport>> reports;  // by tier name
};

// Runs every stage and writes all artifacts under cfg.out_dir. On failure a
// FAILED marker naming the stage is written and the StageError rethrown.
PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream& log);

// Standalone stages reading and writing the artifacts of run_pipeline.
void run_refine_stage(const PipelineConfig& cfg, std::ostream& log);
void run_cluster_stage(const PipelineConfig& cfg, std::ostream& log);
void run_score_stage(const PipelineConfig& cfg, std::ostream& log);
void run_build_cm_stage(const PipelineConfig& cfg, std::ostream& log);
void run_centrality_stage(const PipelineConfig& cfg, const std::vector<std::string>& tiers, std::ostream& log);
void run_evaluate_stage(const PipelineConfig& cfg, const std::vector<std::string>& tiers, std::ostream& log);

struct SweepRow {
  Thresholds thresholds;
  bool ok = false;
  std::string error;
  std::size_t critical_modules = 0;
  std::map<std::size_t, std::size_t> topk;
  std::size_t top_p = 0;
  double acc = 0.0;
  double prauc = 0.0;
};

// One row per threshold combination (th1 outermost). Clustering runs once;
// a failing combination is marked and the sweep continues.
std::vector<SweepRow> sweep_thresholds(const PipelineConfig& cfg, const std::vector<double>& th1s,
                                       const std::vector<double>& th2s, const std::vector<double>& th3s,
                                       std::ostream& log);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const std::vector<std::size_t>& ks);

// Side-by-side comparison against reference values ("dip" or "biogrid").
// Rows are flagged, never asserted.
void write_reference_comparison(std::ostream& out, const std::string& dataset, const PipelineResult& result);

void write_network_stats(std::ostream& out, const std::vector<std::pair<std::string, const Graph*>>& tiers);

}  // namespace pinrefine
