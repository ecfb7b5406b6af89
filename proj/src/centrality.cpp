#include "pinrefine/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "pinrefine/format.hpp"
#include "pinrefine/parallel.hpp"

namespace pinrefine {

namespace {

constexpr std::uint32_t kUnreached = UINT32_MAX;

struct NameEntry {
  CentralityMethod method;
  std::string_view name;
};

constexpr std::array<NameEntry, 10> kNames = {{
    {CentralityMethod::DC, "DC"},
    {CentralityMethod::LAC, "LAC"},
    {CentralityMethod::NC, "NC"},
    {CentralityMethod::DMNC, "DMNC"},
    {CentralityMethod::TP, "TP"},
    {CentralityMethod::LID, "LID"},
    {CentralityMethod::CC, "CC"},
    {CentralityMethod::BC, "BC"},
    {CentralityMethod::PR, "PR"},
    {CentralityMethod::LR, "LR"},
}};

// Single-source BFS up to max_depth. Fills dist (kUnreached elsewhere) and
// returns the visit order.
void bfs(const Graph& g, NodeIndex source, std::uint32_t max_depth, std::vector<std::uint32_t>& dist,
         std::vector<NodeIndex>& order) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  order.clear();
  dist[source] = 0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeIndex v = order[head];
    if (dist[v] >= max_depth) continue;
    for (NodeIndex u : g.neighbors(v)) {
      if (dist[u] == kUnreached) {
        dist[u] = dist[v] + 1;
        order.push_back(u);
      }
    }
  }
}

// Number of edges among the neighbors of v.
std::size_t neighborhood_edges(const Graph& g, NodeIndex v) {
  std::size_t twice = 0;
  for (NodeIndex u : g.neighbors(v)) twice += common_neighbor_count(g, u, v);
  return twice / 2;
}

void check_family(CentralityMethod method, bool ok, const char* family) {
  if (!ok) throw Error(std::string(method_name(method)) + " is not a " + family + " centrality method");
}

}  // namespace

std::string_view method_name(CentralityMethod method) {
  for (const auto& entry : kNames) {
    if (entry.method == method) return entry.name;
  }
  return "?";
}

std::optional<CentralityMethod> parse_method(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.method;
  }
  return std::nullopt;
}

bool is_local(CentralityMethod m) {
  return m == CentralityMethod::DC || m == CentralityMethod::LAC || m == CentralityMethod::NC ||
         m == CentralityMethod::DMNC || m == CentralityMethod::LID;
}
bool is_path(CentralityMethod m) {
  return m == CentralityMethod::CC || m == CentralityMethod::BC || m == CentralityMethod::TP;
}
bool is_walk(CentralityMethod m) { return m == CentralityMethod::PR || m == CentralityMethod::LR; }

std::vector<double> degree_scores(const Graph& g) {
  std::vector<double> out(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) out[v] = static_cast<double>(g.degree(v));
  return out;
}

std::vector<double> lac_scores(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const std::size_t k = g.degree(v);
    if (k == 0) continue;
    out[v] = 2.0 * static_cast<double>(neighborhood_edges(g, v)) / static_cast<double>(k);
  }
  return out;
}

std::vector<double> nc_scores(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    double sum = 0.0;
    for (NodeIndex u : g.neighbors(v)) {
      const std::size_t lower = std::min(g.degree(u), g.degree(v));
      if (lower <= 1) continue;
      sum += static_cast<double>(common_neighbor_count(g, u, v)) / static_cast<double>(lower - 1);
    }
    out[v] = sum;
  }
  return out;
}

std::vector<double> dmnc_scores(const Graph& g, double epsilon) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  // stamp[u] == v + 1 marks u as a neighbor of the current v.
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<bool> visited(n, false);
  std::vector<NodeIndex> queue;
  for (NodeIndex v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;
    for (NodeIndex u : nbrs) stamp[u] = v + 1;

    std::size_t best_nodes = 0;
    std::size_t best_edges = 0;
    for (NodeIndex start : nbrs) {
      if (visited[start]) continue;
      queue.assign(1, start);
      visited[start] = true;
      std::size_t arc_count = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (NodeIndex w : g.neighbors(queue[head])) {
          if (stamp[w] != v + 1) continue;
          ++arc_count;
          if (!visited[w]) {
            visited[w] = true;
            queue.push_back(w);
          }
        }
      }
      const std::size_t edges = arc_count / 2;
      if (queue.size() > best_nodes || (queue.size() == best_nodes && edges > best_edges)) {
        best_nodes = queue.size();
        best_edges = edges;
      }
    }
    for (NodeIndex u : nbrs) visited[u] = false;
    out[v] = static_cast<double>(best_edges) / std::pow(static_cast<double>(best_nodes), epsilon);
  }
  return out;
}

std::vector<double> lid_scores(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const std::size_t k = g.degree(v);
    if (k == 0) continue;
    // Closed neighborhood: the k spokes plus the edges among neighbors.
    out[v] = static_cast<double>(k + neighborhood_edges(g, v)) / static_cast<double>(k);
  }
  return out;
}

std::vector<double> closeness_scores(const Graph& g, unsigned threads) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const std::size_t block = 64;
  parallel_for((n + block - 1) / block, threads, [&](std::size_t b) {
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeIndex> order;
    for (std::size_t v = b * block; v < std::min(n, (b + 1) * block); ++v) {
      bfs(g, static_cast<NodeIndex>(v), kUnreached, dist, order);
      const std::size_t reach = order.size();
      if (reach < 2) continue;
      std::uint64_t total = 0;
      for (NodeIndex u : order) total += dist[u];
      const double r = static_cast<double>(reach - 1);
      out[v] = (r / static_cast<double>(total)) * (r / static_cast<double>(n - 1));
    }
  });
  return out;
}

std::vector<double> betweenness_scores(const Graph& g, unsigned threads) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  if (n < 3) return out;
  // Sources are split into a thread-count-independent set of blocks, each
  // with its own accumulator; blocks are summed in order, so the result is
  // bit-identical for any worker count.
  const std::size_t block = std::max<std::size_t>(64, (n + 255) / 256);
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<std::vector<double>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    auto& acc = partial[b];
    acc.assign(n, 0.0);
    std::vector<std::uint32_t> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<NodeIndex> order;
    for (std::size_t s = b * block; s < std::min(n, (b + 1) * block); ++s) {
      bfs(g, static_cast<NodeIndex>(s), kUnreached, dist, order);
      for (NodeIndex v : order) {
        sigma[v] = 0.0;
        delta[v] = 0.0;
      }
      sigma[s] = 1.0;
      for (NodeIndex v : order) {
        for (NodeIndex w : g.neighbors(v)) {
          if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeIndex w = *it;
        for (NodeIndex v : g.neighbors(w)) {
          if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != s) acc[w] += delta[w];
      }
    }
  });
  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) out[v] += acc[v];
  }
  // Every unordered pair was counted from both endpoints.
  for (double& x : out) x /= 2.0;
  return out;
}

std::vector<double> topological_potential_scores(const Graph& g, double sigma, unsigned threads) {
  if (!(sigma > 0.0)) throw Error("topological potential sigma must be positive");
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  const auto reach = static_cast<std::uint32_t>(std::ceil(3.0 * sigma / std::sqrt(2.0)));
  std::vector<double> kernel(reach + 1);
  for (std::uint32_t d = 0; d <= reach; ++d) {
    const double x = static_cast<double>(d) / sigma;
    kernel[d] = std::exp(-x * x);
  }
  const std::size_t block = 64;
  parallel_for((n + block - 1) / block, threads, [&](std::size_t b) {
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeIndex> order;
    for (std::size_t v = b * block; v < std::min(n, (b + 1) * block); ++v) {
      bfs(g, static_cast<NodeIndex>(v), reach, dist, order);
      double sum = 0.0;
      for (std::size_t i = 1; i < order.size(); ++i) sum += kernel[dist[order[i]]];
      out[v] = sum;
    }
  });
  return out;
}

std::vector<double> pagerank_scores(const Graph& g, const CentralityOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  const double nd = static_cast<double>(n);
  const double d = options.damping;
  std::vector<double> x(n, 1.0 / nd);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      if (g.degree(v) == 0) dangling += x[v];
    }
    const double base = (1.0 - d) / nd + d * dangling / nd;
    double change = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      double in = 0.0;
      for (NodeIndex u : g.neighbors(v)) in += x[u] / static_cast<double>(g.degree(u));
      next[v] = base + d * in;
      change += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    if (change < options.tolerance) return x;
  }
  throw Error("PR did not converge within " + std::to_string(options.max_iterations) + " iterations");
}

std::vector<double> leaderrank_scores(const Graph& g, const CentralityOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  // Lazy step (s + P s) / 2: same fixed point as the plain walk, but isolated
  // nodes no longer trade their whole mass with the ground every step, which
  // kept sparse networks oscillating well past the iteration cap.
  const double nd = static_cast<double>(n);
  std::vector<double> s(n, 1.0);
  double ground = 0.0;
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const double from_ground = ground / nd;
    double next_ground = 0.0;
    double change = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      double in = from_ground;
      for (NodeIndex u : g.neighbors(v)) in += s[u] / static_cast<double>(g.degree(u) + 1);
      next[v] = 0.5 * (s[v] + in);
      next_ground += s[v] / static_cast<double>(g.degree(v) + 1);
      change += std::abs(next[v] - s[v]);
    }
    next_ground = 0.5 * (ground + next_ground);
    change += std::abs(next_ground - ground);
    s.swap(next);
    ground = next_ground;
    if (change < options.tolerance) {
      for (double& x : s) x += ground / nd;
      return s;
    }
  }
  throw Error("LR did not converge within " + std::to_string(options.max_iterations) + " iterations");
}

std::vector<double> centrality_scores(const Graph& g, CentralityMethod method, const CentralityOptions& options) {
  switch (method) {
    case CentralityMethod::DC:
      return degree_scores(g);
    case CentralityMethod::LAC:
      return lac_scores(g);
    case CentralityMethod::NC:
      return nc_scores(g);
    case CentralityMethod::DMNC:
      return dmnc_scores(g, options.dmnc_epsilon);
    case CentralityMethod::LID:
      return lid_scores(g);
    case CentralityMethod::CC:
      return closeness_scores(g, options.threads);
    case CentralityMethod::BC:
      return betweenness_scores(g, options.threads);
    case CentralityMethod::TP:
      return topological_potential_scores(g, options.tp_sigma, options.threads);
    case CentralityMethod::PR:
      return pagerank_scores(g, options);
    case CentralityMethod::LR:
      return leaderrank_scores(g, options);
  }
  throw Error("unknown centrality method");
}

Ranking make_ranking(const Graph& g, CentralityMethod method, const std::vector<double>& scores) {
  if (scores.size() != g.node_count()) throw Error("score vector does not match the graph");
  std::vector<NodeIndex> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  // Index order is id order, so the index tie-break is the id tie-break.
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  Ranking r;
  r.method = method;
  r.entries.reserve(order.size());
  for (NodeIndex v : order) {
    if (!std::isfinite(scores[v])) throw Error(std::string(method_name(method)) + " produced a non-finite score");
    r.entries.push_back({g.id(v), scores[v]});
  }
  return r;
}

Ranking compute_local(const Graph& g, CentralityMethod method, const CentralityOptions& options) {
  check_family(method, is_local(method), "neighborhood-based");
  return make_ranking(g, method, centrality_scores(g, method, options));
}

Ranking compute_path(const Graph& g, CentralityMethod method, const CentralityOptions& options) {
  check_family(method, is_path(method), "path-based");
  return make_ranking(g, method, centrality_scores(g, method, options));
}

Ranking compute_walk(const Graph& g, CentralityMethod method, const CentralityOptions& options) {
  check_family(method, is_walk(method), "walk-based");
  return make_ranking(g, method, centrality_scores(g, method, options));
}

Ranking compute_ranking(const Graph& g, CentralityMethod method, const CentralityOptions& options) {
  return make_ranking(g, method, centrality_scores(g, method, options));
}

void write_ranking(std::ostream& out, const Ranking& ranking) {
  out << "rank\tprotein\t" << method_name(ranking.method) << '\n';
  std::size_t rank = 1;
  for (const auto& e : ranking.entries) out << rank++ << '\t' << e.id.str() << '\t' << sig6(e.score) << '\n';
}

Ranking read_ranking(std::istream& in, CentralityMethod method) {
  Ranking r;
  r.method = method;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, RankedProtein>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("rank", 0) == 0) continue;
    std::istringstream row(line);
    std::size_t rank = 0;
    std::string id;
    double score = 0.0;
    if (!(row >> rank >> id >> score)) throw ParseError(line_no, "expected '<rank> <protein> <score>'");
    rows.emplace_back(rank, RankedProtein{ProteinId(id), score});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [rank, entry] : rows) r.entries.push_back(std::move(entry));
  return r;
}

}  // namespace pinrefine
