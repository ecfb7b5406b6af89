#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pinrefine/graph.hpp"

namespace pinrefine {

using ModuleId = std::uint32_t;

// Disjoint assignment of graph nodes to modules 0..module_count-1.
struct Partition {
  std::vector<ModuleId> module_of;
  std::size_t module_count = 0;
  double modularity = 0.0;

  // Relabels arbitrary labels to contiguous ids in order of first
  // appearance by node index. modularity is left at 0.
  static Partition from_labels(const std::vector<std::uint32_t>& labels);

  std::vector<NodeIndex> members(ModuleId module) const;
  std::vector<std::size_t> sizes() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Q = sum over modules of (e_ii - a_i^2). Throws on an edgeless graph or a
// partition that does not fit the graph.
double modularity(const Graph& g, const Partition& p);

// Change in Q from moving `node` into `target`, computed from module degree
// totals in O(deg(node) + n) without rescoring the partition.
double delta_modularity(const Graph& g, const Partition& p, NodeIndex node, ModuleId target);

// Modularity after every local-moving sweep and at the end of every
// aggregation level, in execution order.
struct UnfoldingTrace {
  std::vector<double> sweep_modularity;
  std::vector<double> level_modularity;
  std::size_t levels = 0;
};

// Deterministic fast unfolding (local moving + aggregation). Nodes are
// visited in ascending index order and candidate modules in ascending id
// order; a node moves only on a strictly positive gain, the best gain wins
// and ties go to the lowest module id.
Partition fast_unfolding(const Graph& g, UnfoldingTrace* trace = nullptr);

// "# modules=<m>\tQ=<q>" header, then "<protein>\t<module>" per node.
void write_partition(std::ostream& out, const Graph& g, const Partition& p);
// Reads a partition dump against the graph it was computed on. Every graph
// node must be listed exactly once. Q is recomputed.
Partition read_partition(std::istream& in, const Graph& g);

}  // namespace pinrefine
