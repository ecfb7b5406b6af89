#include "pinrefine/critical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "pinrefine/format.hpp"

namespace pinrefine {

namespace {

void check_module(const Partition& p, ModuleId module) {
  if (module >= p.module_count) throw Error("module id " + std::to_string(module) + " out of range");
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.empty()) return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace

double module_indicator_corr(const Graph& clustered, const Partition& p, ModuleId module,
                             const HomologyMap& homology) {
  check_module(p, module);
  const std::size_t n = clustered.node_count();
  std::vector<double> indicator(n);
  std::vector<double> scores(n);
  for (NodeIndex v = 0; v < n; ++v) {
    indicator[v] = p.module_of[v] == module ? 1.0 : 0.0;
    scores[v] = homology_score(homology, clustered.id(v));
  }
  return pearson(indicator, scores);
}

double module_nsl(const Graph& clustered, const Partition& p, ModuleId module, const LocalizationMap& loc) {
  check_module(p, module);
  std::size_t size = 0;
  std::size_t nuclear = 0;
  for (NodeIndex v = 0; v < clustered.node_count(); ++v) {
    if (p.module_of[v] != module) continue;
    ++size;
    const auto it = loc.find(clustered.id(v));
    if (it != loc.end() && it->second.contains(kNucleus)) ++nuclear;
  }
  if (size == 0) throw Error("module " + std::to_string(module) + " is empty");
  return static_cast<double>(nuclear) / static_cast<double>(size);
}

ModuleEdgeCounts module_edge_counts(const Graph& clustered, const Partition& p, ModuleId module) {
  check_module(p, module);
  ModuleEdgeCounts counts;
  for (NodeIndex v = 0; v < clustered.node_count(); ++v) {
    if (p.module_of[v] == module) ++counts.nodes;
  }
  for (const auto& [u, v] : clustered.edges()) {
    const bool in_u = p.module_of[u] == module;
    const bool in_v = p.module_of[v] == module;
    if (in_u && in_v) {
      ++counts.internal;
    } else if (in_u || in_v) {
      ++counts.boundary;
    }
  }
  return counts;
}

double module_tf(const Graph& clustered, const Partition& p, ModuleId module) {
  const auto counts = module_edge_counts(clustered, p, module);
  if (counts.nodes == 0) throw Error("module " + std::to_string(module) + " is empty");
  return (static_cast<double>(counts.internal) - static_cast<double>(counts.boundary)) /
         static_cast<double>(counts.nodes);
}

std::vector<ModuleScore> score_modules(const Graph& clustered, const Partition& p,
                                       const AnnotationStore& annotations) {
  if (p.module_of.size() != clustered.node_count()) throw Error("partition does not match the clustered graph");
  std::vector<ModuleScore> scores(p.module_count);
  for (ModuleId c = 0; c < p.module_count; ++c) scores[c].module = c;

  // One pass for the edge and membership counts; Corr and NSL per module.
  for (NodeIndex v = 0; v < clustered.node_count(); ++v) {
    auto& s = scores[p.module_of[v]];
    ++s.n_nodes;
    if (annotations.essential.contains(clustered.id(v))) ++s.essential_count;
  }
  for (const auto& [u, v] : clustered.edges()) {
    const auto cu = p.module_of[u];
    const auto cv = p.module_of[v];
    if (cu == cv) {
      ++scores[cu].internal_edges;
    } else {
      ++scores[cu].boundary_edges;
      ++scores[cv].boundary_edges;
    }
  }
  for (auto& s : scores) {
    if (s.n_nodes == 0) throw Error("module " + std::to_string(s.module) + " is empty");
    s.tf = (static_cast<double>(s.internal_edges) - static_cast<double>(s.boundary_edges)) /
           static_cast<double>(s.n_nodes);
    s.nsl = module_nsl(clustered, p, s.module, annotations.localization);
    s.corr = module_indicator_corr(clustered, p, s.module, annotations.homology);
  }
  return scores;
}

CriticalSelection select_critical(const std::vector<ModuleScore>& scores, const Thresholds& thresholds) {
  CriticalSelection sel;
  sel.thresholds = thresholds;
  for (const auto& s : scores) {
    if (s.corr >= thresholds.conservatism) sel.conservatism.insert(s.module);
    if (s.nsl >= thresholds.subcellular) sel.subcellular.insert(s.module);
    if (s.tf <= thresholds.topology) sel.topology.insert(s.module);
  }
  sel.critical = sel.conservatism;
  for (ModuleId c : sel.subcellular) {
    if (!sel.topology.contains(c)) sel.critical.insert(c);
  }
  return sel;
}

Graph build_cmpin(const Graph& rdpin, const Graph& clustered, const Partition& p, const CriticalSelection& selection) {
  std::vector<bool> in_critical(rdpin.node_count(), false);
  for (NodeIndex v = 0; v < clustered.node_count(); ++v) {
    if (!selection.critical.contains(p.module_of[v])) continue;
    const auto r = rdpin.index_of(clustered.id(v));
    if (!r) throw Error("clustered protein '" + clustered.id(v).str() + "' is missing from the RD-PIN");
    in_critical[*r] = true;
  }
  return rdpin.filter_edges([&](NodeIndex u, NodeIndex v) { return in_critical[u] && in_critical[v]; });
}

void write_module_scores(std::ostream& out, const std::vector<ModuleScore>& scores) {
  out << "module\tCorr\tNSL\tTF\tproteins/essential\tinternal_edges\tboundary_edges\n";
  for (const auto& s : scores) {
    out << s.module << '\t' << sig6(s.corr) << '\t' << sig6(s.nsl) << '\t' << sig6(s.tf) << '\t' << s.n_nodes << '/'
        << s.essential_count << '\t' << s.internal_edges << '\t' << s.boundary_edges << '\n';
  }
}

void write_selection(std::ostream& out, const CriticalSelection& selection) {
  auto write_set = [&](const char* name, const std::set<ModuleId>& set) {
    out << name << " (" << set.size() << "):";
    for (ModuleId c : set) out << ' ' << c;
    out << '\n';
  };
  out << "th1\t" << sig6(selection.thresholds.conservatism) << '\n';
  out << "th2\t" << sig6(selection.thresholds.subcellular) << '\n';
  out << "th3\t" << sig6(selection.thresholds.topology) << '\n';
  write_set("conservatism", selection.conservatism);
  write_set("subcellular", selection.subcellular);
  write_set("topology", selection.topology);
  write_set("critical", selection.critical);
}

}  // namespace pinrefine
