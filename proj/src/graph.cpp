#include "pinrefine/graph.hpp"

#include <algorithm>
#include <ostream>
#include <queue>

namespace pinrefine {

std::optional<NodeIndex> Graph::index_of(const ProteinId& id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

bool Graph::has_edge(NodeIndex u, NodeIndex v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<NodeIndex, NodeIndex>> Graph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(edge_count_);
  for (NodeIndex u = 0; u < adjacency_.size(); ++u) {
    for (NodeIndex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

EdgeList Graph::to_edge_list() const {
  EdgeList list;
  list.pairs.reserve(edge_count_);
  for (const auto& [u, v] : edges()) list.pairs.emplace_back(ids_[u], ids_[v]);
  // Index order equals id order, so the pairs are already canonical.
  return list;
}

Graph Graph::filter_edges(const std::function<bool(NodeIndex, NodeIndex)>& keep) const {
  Graph out;
  out.ids_ = ids_;
  out.adjacency_.resize(ids_.size());
  for (const auto& [u, v] : edges()) {
    if (!keep(u, v)) continue;
    out.adjacency_[u].push_back(v);
    out.adjacency_[v].push_back(u);
    ++out.edge_count_;
  }
  // Edges arrive in ascending (u, v) order: each list first receives its
  // smaller neighbors, then its larger ones, so the lists stay sorted.
  return out;
}

Graph build_graph(const EdgeList& edges, const std::set<ProteinId>& universe) {
  std::vector<ProteinId> ids(universe.begin(), universe.end());
  ids.reserve(ids.size() + 2 * edges.size());
  for (const auto& [a, b] : edges.pairs) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  Graph g;
  g.ids_ = std::move(ids);
  g.adjacency_.resize(g.ids_.size());
  for (const auto& [a, b] : edges.pairs) {
    const NodeIndex u = *g.index_of(a);
    const NodeIndex v = *g.index_of(b);
    if (u == v) continue;
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  std::size_t half = 0;
  for (const auto& adj : g.adjacency_) half += adj.size();
  g.edge_count_ = half / 2;
  return g;
}

std::vector<std::vector<NodeIndex>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeIndex>> components;
  std::queue<NodeIndex> frontier;
  for (NodeIndex start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeIndex> members;
    seen[start] = true;
    frontier.push(start);
    while (!frontier.empty()) {
      const NodeIndex v = frontier.front();
      frontier.pop();
      members.push_back(v);
      for (NodeIndex u : g.neighbors(v)) {
        if (!seen[u]) {
          seen[u] = true;
          frontier.push(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  // Discovery order already has ascending smallest members; stable sort keeps
  // that as the tie-break.
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return components;
}

EdgeList maximal_component_edges(const Graph& g) {
  if (g.node_count() == 0) throw Error("maximal component of an empty graph is undefined");
  const auto components = connected_components(g);
  std::vector<bool> inside(g.node_count(), false);
  for (NodeIndex v : components.front()) inside[v] = true;
  EdgeList out;
  for (const auto& [u, v] : g.edges()) {
    if (inside[u] && inside[v]) out.pairs.emplace_back(g.id(u), g.id(v));
  }
  return out;
}

std::size_t common_neighbor_count(const Graph& g, NodeIndex u, NodeIndex v) {
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

double local_clustering(const Graph& g, NodeIndex v) {
  const std::size_t k = g.degree(v);
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (NodeIndex u : g.neighbors(v)) links += common_neighbor_count(g, u, v);
  // Each neighbor-neighbor link was seen from both ends.
  return static_cast<double>(links) / static_cast<double>(k * (k - 1));
}

GraphStats graph_stats(const Graph& g) {
  GraphStats stats;
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  stats.node_count = n;
  stats.edge_count = m;
  if (n == 0) return stats;
  stats.avg_degree = 2.0 * static_cast<double>(m) / static_cast<double>(n);
  double total = 0.0;
  for (NodeIndex v = 0; v < n; ++v) total += local_clustering(g, v);
  stats.avg_clustering = total / static_cast<double>(n);
  if (n >= 2) {
    stats.density = 2.0 * static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  return stats;
}

void write_graph(std::ostream& out, const Graph& g) { write_edge_list(out, g.to_edge_list()); }

}  // namespace pinrefine
