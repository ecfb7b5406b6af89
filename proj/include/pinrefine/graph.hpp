#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "pinrefine/ingest.hpp"
#include "pinrefine/types.hpp"

namespace pinrefine {

using NodeIndex = std::uint32_t;

// Immutable undirected simple graph. Node indices follow ascending protein
// id order, so comparing indices compares ids.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const ProteinId& id(NodeIndex v) const { return ids_[v]; }
  const std::vector<ProteinId>& ids() const noexcept { return ids_; }
  std::optional<NodeIndex> index_of(const ProteinId& id) const;

  // Sorted ascending.
  std::span<const NodeIndex> neighbors(NodeIndex v) const { return adjacency_[v]; }
  std::size_t degree(NodeIndex v) const { return adjacency_[v].size(); }
  bool has_edge(NodeIndex u, NodeIndex v) const;

  // Every edge once as (u, v) with u < v, in ascending order.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;
  EdgeList to_edge_list() const;

  // Same node set, keeping the edges for which keep(u, v) holds.
  Graph filter_edges(const std::function<bool(NodeIndex, NodeIndex)>& keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(const EdgeList& edges, const std::set<ProteinId>& universe);

  std::vector<ProteinId> ids_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Graph over the edge endpoints plus any extra universe nodes (kept isolated
// when they have no edges).
Graph build_graph(const EdgeList& edges, const std::set<ProteinId>& universe = {});

// Components ordered by size descending, then by smallest member ascending.
// Members of each component are sorted.
std::vector<std::vector<NodeIndex>> connected_components(const Graph& g);

// Edges of the first component reported by connected_components.
EdgeList maximal_component_edges(const Graph& g);

// |N(u) ∩ N(v)| by merging the sorted neighbor lists.
std::size_t common_neighbor_count(const Graph& g, NodeIndex u, NodeIndex v);

double local_clustering(const Graph& g, NodeIndex v);

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double avg_degree = 0.0;
  double avg_clustering = 0.0;
  double density = 0.0;
};

GraphStats graph_stats(const Graph& g);

// Canonical TSV: one "a<TAB>b" line per edge, a < b, lines sorted.
void write_graph(std::ostream& out, const Graph& g);

}  // namespace pinrefine
