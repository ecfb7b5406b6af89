#include "pinrefine/community.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "pinrefine/format.hpp"

namespace pinrefine {

Partition Partition::from_labels(const std::vector<std::uint32_t>& labels) {
  Partition p;
  p.module_of.resize(labels.size());
  std::map<std::uint32_t, ModuleId> relabel;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const auto [it, inserted] = relabel.try_emplace(labels[v], static_cast<ModuleId>(relabel.size()));
    p.module_of[v] = it->second;
  }
  p.module_count = relabel.size();
  return p;
}

std::vector<NodeIndex> Partition::members(ModuleId module) const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < module_of.size(); ++v) {
    if (module_of[v] == module) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> out(module_count, 0);
  for (ModuleId c : module_of) ++out[c];
  return out;
}

namespace {

void check_fits(const Graph& g, const Partition& p) {
  if (p.module_of.size() != g.node_count()) {
    throw Error("partition covers " + std::to_string(p.module_of.size()) + " nodes, graph has " +
                std::to_string(g.node_count()));
  }
  for (ModuleId c : p.module_of) {
    if (c >= p.module_count) throw Error("module id " + std::to_string(c) + " out of range");
  }
}

// Sum of degrees per module.
std::vector<double> module_degree_totals(const Graph& g, const Partition& p) {
  std::vector<double> totals(p.module_count, 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) totals[p.module_of[v]] += static_cast<double>(g.degree(v));
  return totals;
}

// Integer-weighted graph used inside fast unfolding. Weights count original
// edges; self_arcs[i] counts arcs inside super-node i (each internal edge
// twice), so strength[i] = self_arcs[i] + sum of incident weights and the
// strengths sum to 2m.
struct WeightedGraph {
  std::vector<std::int64_t> self_arcs;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adjacency;
  std::vector<std::int64_t> strength;
  std::int64_t total = 0;

  std::size_t size() const { return adjacency.size(); }
};

WeightedGraph from_graph(const Graph& g) {
  WeightedGraph w;
  const std::size_t n = g.node_count();
  w.self_arcs.assign(n, 0);
  w.adjacency.resize(n);
  w.strength.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    for (NodeIndex u : g.neighbors(v)) w.adjacency[v].emplace_back(u, 1);
    w.strength[v] = static_cast<std::int64_t>(g.degree(v));
    w.total += w.strength[v];
  }
  return w;
}

// Q scaled by total^2: sum_c (in_c * total - tot_c^2). Exact.
std::int64_t scaled_modularity(const WeightedGraph& w, const std::vector<std::uint32_t>& community) {
  const std::size_t n = w.size();
  std::vector<std::int64_t> in(n, 0);
  std::vector<std::int64_t> tot(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = community[i];
    in[c] += w.self_arcs[i];
    tot[c] += w.strength[i];
    for (const auto& [j, weight] : w.adjacency[i]) {
      if (community[j] == c) in[c] += weight;
    }
  }
  std::int64_t q = 0;
  for (std::size_t c = 0; c < n; ++c) q += in[c] * w.total - tot[c] * tot[c];
  return q;
}

double unscale(std::int64_t scaled, std::int64_t total) {
  const double t = static_cast<double>(total);
  return static_cast<double>(scaled) / (t * t);
}

// One level of local moving. Returns true if any node moved.
bool local_moving(const WeightedGraph& w, std::vector<std::uint32_t>& community, UnfoldingTrace* trace) {
  const std::size_t n = w.size();
  std::vector<std::int64_t> tot(n, 0);
  for (std::size_t i = 0; i < n; ++i) tot[community[i]] += w.strength[i];

  std::vector<std::int64_t> link(n, 0);
  std::vector<std::uint32_t> touched;
  std::int64_t current_q = scaled_modularity(w, community);
  bool any_move = false;
  bool moved_this_sweep = true;

  while (moved_this_sweep) {
    moved_this_sweep = false;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t home = community[i];
      const std::int64_t k = w.strength[i];

      touched.clear();
      for (const auto& [j, weight] : w.adjacency[i]) {
        const auto c = community[j];
        if (link[c] == 0) touched.push_back(c);
        link[c] += weight;
      }
      std::sort(touched.begin(), touched.end());

      tot[home] -= k;
      // Gain of inserting i into c, up to a positive factor shared by all c.
      auto gain = [&](std::uint32_t c) { return w.total * link[c] - tot[c] * k; };
      const std::int64_t home_gain = gain(home);

      std::uint32_t best = home;
      std::int64_t best_gain = 0;
      bool have_candidate = false;
      for (std::uint32_t c : touched) {
        if (c == home) continue;
        const std::int64_t g = gain(c);
        if (!have_candidate || g > best_gain) {
          best = c;
          best_gain = g;
          have_candidate = true;
        }
      }
      if (!have_candidate || best_gain <= home_gain) best = home;

      tot[best] += k;
      community[i] = best;
      for (std::uint32_t c : touched) link[c] = 0;

      if (best != home) {
        moved_this_sweep = true;
        any_move = true;
      }
    }

    const std::int64_t q = scaled_modularity(w, community);
    if (q < current_q) throw Error("internal error: modularity decreased during local moving");
    current_q = q;
    if (trace != nullptr) trace->sweep_modularity.push_back(unscale(q, w.total));
  }
  return any_move;
}

// Contiguous relabeling by first appearance. Returns the number of labels.
std::uint32_t compact(std::vector<std::uint32_t>& community) {
  std::vector<std::uint32_t> relabel(community.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : community) {
    if (relabel[c] == UINT32_MAX) relabel[c] = next++;
    c = relabel[c];
  }
  return next;
}

WeightedGraph aggregate(const WeightedGraph& w, const std::vector<std::uint32_t>& community, std::uint32_t count) {
  WeightedGraph out;
  out.self_arcs.assign(count, 0);
  out.strength.assign(count, 0);
  out.adjacency.resize(count);
  out.total = w.total;

  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int64_t>> arcs;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto ci = community[i];
    out.self_arcs[ci] += w.self_arcs[i];
    out.strength[ci] += w.strength[i];
    for (const auto& [j, weight] : w.adjacency[i]) {
      const auto cj = community[j];
      if (ci == cj) {
        out.self_arcs[ci] += weight;
      } else {
        arcs.emplace_back(ci, cj, weight);
      }
    }
  }
  std::sort(arcs.begin(), arcs.end());
  for (const auto& [a, b, weight] : arcs) {
    auto& adj = out.adjacency[a];
    if (!adj.empty() && adj.back().first == b) {
      adj.back().second += weight;
    } else {
      adj.emplace_back(b, weight);
    }
  }
  return out;
}

}  // namespace

double modularity(const Graph& g, const Partition& p) {
  check_fits(g, p);
  const std::size_t m = g.edge_count();
  if (m == 0) throw Error("modularity is undefined on a graph without edges");

  std::vector<double> internal(p.module_count, 0.0);
  for (const auto& [u, v] : g.edges()) {
    if (p.module_of[u] == p.module_of[v]) internal[p.module_of[u]] += 1.0;
  }
  const auto totals = module_degree_totals(g, p);
  const double md = static_cast<double>(m);
  double q = 0.0;
  for (std::size_t c = 0; c < p.module_count; ++c) {
    const double a = totals[c] / (2.0 * md);
    q += internal[c] / md - a * a;
  }
  return q;
}

double delta_modularity(const Graph& g, const Partition& p, NodeIndex node, ModuleId target) {
  check_fits(g, p);
  if (target >= p.module_count) throw Error("target module " + std::to_string(target) + " out of range");
  if (node >= g.node_count()) throw Error("node index out of range");
  const ModuleId home = p.module_of[node];
  if (home == target || g.degree(node) == 0) return 0.0;
  const std::size_t m = g.edge_count();

  double links_home = 0.0;
  double links_target = 0.0;
  for (NodeIndex u : g.neighbors(node)) {
    if (p.module_of[u] == home) links_home += 1.0;
    if (p.module_of[u] == target) links_target += 1.0;
  }
  const auto totals = module_degree_totals(g, p);
  const double k = static_cast<double>(g.degree(node));
  const double md = static_cast<double>(m);
  // Internal-edge change plus the change in the squared degree fractions of
  // the two affected modules.
  return (links_target - links_home) / md - k * (totals[target] - totals[home] + k) / (2.0 * md * md);
}

Partition fast_unfolding(const Graph& g, UnfoldingTrace* trace) {
  if (g.edge_count() == 0) throw Error("fast unfolding needs a graph with at least one edge");

  WeightedGraph level = from_graph(g);
  std::vector<std::uint32_t> assignment(g.node_count());
  for (std::uint32_t v = 0; v < assignment.size(); ++v) assignment[v] = v;

  std::int64_t last_q = INT64_MIN;
  while (true) {
    std::vector<std::uint32_t> community(level.size());
    for (std::uint32_t i = 0; i < community.size(); ++i) community[i] = i;
    const bool moved = local_moving(level, community, trace);

    const std::int64_t q = scaled_modularity(level, community);
    if (q < last_q) throw Error("internal error: modularity decreased across aggregation levels");
    last_q = q;
    if (trace != nullptr) {
      trace->level_modularity.push_back(unscale(q, level.total));
      ++trace->levels;
    }
    if (!moved) break;

    const std::uint32_t count = compact(community);
    for (auto& a : assignment) a = community[a];
    level = aggregate(level, community, count);
  }

  Partition p = Partition::from_labels(assignment);
  p.modularity = modularity(g, p);
  return p;
}

void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
  out << "# modules=" << p.module_count << "\tQ=" << sig6(p.modularity) << '\n';
  for (NodeIndex v = 0; v < g.node_count(); ++v) out << g.id(v).str() << '\t' << p.module_of[v] << '\n';
}

Partition read_partition(std::istream& in, const Graph& g) {
  std::vector<std::uint32_t> labels(g.node_count(), UINT32_MAX);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string id;
    long long module = -1;
    if (!(row >> id >> module) || module < 0) throw ParseError(line_no, "expected '<protein> <module>'");
    const auto v = g.index_of(ProteinId(id));
    if (!v) throw ParseError(line_no, "protein '" + id + "' is not in the clustered graph");
    if (labels[*v] != UINT32_MAX) throw ParseError(line_no, "protein '" + id + "' listed twice");
    labels[*v] = static_cast<std::uint32_t>(module);
  }
  Partition p;
  p.module_of.assign(labels.begin(), labels.end());
  std::uint32_t max_label = 0;
  for (NodeIndex v = 0; v < labels.size(); ++v) {
    if (labels[v] == UINT32_MAX) throw Error("partition does not assign protein '" + g.id(v).str() + "'");
    max_label = std::max(max_label, labels[v]);
  }
  p.module_count = labels.empty() ? 0 : max_label + 1;
  if (g.edge_count() > 0) p.modularity = modularity(g, p);
  return p;
}

}  // namespace pinrefine
