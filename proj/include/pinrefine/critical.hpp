#pragma once

#include <iosfwd>
#include <set>
#include <vector>

#include "pinrefine/community.hpp"
#include "pinrefine/graph.hpp"
#include "pinrefine/ingest.hpp"

namespace pinrefine {

struct ModuleScore {
  ModuleId module = 0;
  double corr = 0.0;
  double nsl = 0.0;
  double tf = 0.0;
  std::size_t n_nodes = 0;
  std::size_t internal_edges = 0;
  std::size_t boundary_edges = 0;
  std::size_t essential_count = 0;
};

// Pearson correlation between the module's 0/1 membership vector and the
// homology scores, both over every node of the clustered graph. Returns 0
// when either vector is constant.
double module_indicator_corr(const Graph& clustered, const Partition& p, ModuleId module,
                             const HomologyMap& homology);

// Fraction of module proteins annotated to the nucleus (each protein counts
// at most once).
double module_nsl(const Graph& clustered, const Partition& p, ModuleId module, const LocalizationMap& loc);

struct ModuleEdgeCounts {
  std::size_t internal = 0;
  std::size_t boundary = 0;
  std::size_t nodes = 0;
};

ModuleEdgeCounts module_edge_counts(const Graph& clustered, const Partition& p, ModuleId module);

// (internal - boundary) / size.
double module_tf(const Graph& clustered, const Partition& p, ModuleId module);

std::vector<ModuleScore> score_modules(const Graph& clustered, const Partition& p, const AnnotationStore& annotations);

struct Thresholds {
  double conservatism = 0.0;  // Corr >= th1
  double subcellular = 0.0;   // NSL >= th2
  double topology = 0.0;      // TF <= th3
};

struct CriticalSelection {
  Thresholds thresholds;
  std::set<ModuleId> conservatism;
  std::set<ModuleId> subcellular;
  std::set<ModuleId> topology;
  std::set<ModuleId> critical;  // conservatism ∪ (subcellular \ topology)
};

CriticalSelection select_critical(const std::vector<ModuleScore>& scores, const Thresholds& thresholds);

// Keeps an RD-PIN edge iff both endpoints sit in critical modules (not
// necessarily the same one). Nodes outside the clustered graph belong to no
// module. The node set is unchanged.
Graph build_cmpin(const Graph& rdpin, const Graph& clustered, const Partition& p, const CriticalSelection& selection);

// TSV: module, Corr, NSL, TF, proteins/essential, plus the raw edge counts.
void write_module_scores(std::ostream& out, const std::vector<ModuleScore>& scores);

void write_selection(std::ostream& out, const CriticalSelection& selection);

}  // namespace pinrefine
