#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>

#include "oracles.hpp"
#include "pinrefine/critical.hpp"

using namespace pinrefine;

namespace {

ProteinId P(const std::string& s) { return ProteinId(s); }

// K3 on v000..v002 plus an edge v003-v004, disjoint.
const oracle::Matrix kTriangleAndEdge = oracle::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});

std::vector<ModuleScore> scores_from(const std::vector<std::array<double, 3>>& rows) {
  std::vector<ModuleScore> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ModuleScore s;
    s.module = static_cast<ModuleId>(i);
    s.corr = rows[i][0];
    s.nsl = rows[i][1];
    s.tf = rows[i][2];
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(CorrTest, WholeGraphModuleIsZero) {
  const Graph g = oracle::to_graph(kTriangleAndEdge);
  const auto p = Partition::from_labels({0, 0, 0, 0, 0});
  HomologyMap h{{P("v000"), 3.0}};
  EXPECT_EQ(module_indicator_corr(g, p, 0, h), 0.0);
}

TEST(CorrTest, AlignedIndicatorIsOne) {
  const Graph g = oracle::to_graph(oracle::from_edges(4, {{0, 1}, {2, 3}}));
  const auto p = Partition::from_labels({0, 0, 1, 1});
  HomologyMap h{{P("v000"), 1.0}, {P("v001"), 1.0}};
  EXPECT_NEAR(module_indicator_corr(g, p, 0, h), 1.0, 1e-12);
  EXPECT_NEAR(module_indicator_corr(g, p, 1, h), -1.0, 1e-12);
  EXPECT_THROW(module_indicator_corr(g, p, 2, h), Error);
}

TEST(CorrTest, MatchesPearsonOracleAndAffineInvariance) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> score(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 20;
    const Graph g = oracle::to_graph(oracle::random_graph(n, 0.3, rng));
    std::uniform_int_distribution<std::uint32_t> pick(0, 3);
    std::vector<std::uint32_t> l(n);
    for (auto& x : l) x = pick(rng);
    const auto p = Partition::from_labels(l);
    HomologyMap h, scaled;
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (trial % 3 == 0 && i % 2 == 0) continue;  // absent -> 0
      y[i] = score(rng);
      h[g.id(static_cast<NodeIndex>(i))] = y[i];
      scaled[g.id(static_cast<NodeIndex>(i))] = 2.5 * y[i] + 4.0;
    }
    for (ModuleId m = 0; m < p.module_count; ++m) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = p.module_of[i] == m ? 1.0 : 0.0;
      const double r = module_indicator_corr(g, p, m, h);
      EXPECT_NEAR(r, oracle::pearson(x, y), 1e-12);
      if (trial % 3 != 0) EXPECT_NEAR(module_indicator_corr(g, p, m, scaled), r, 1e-12);
    }
  }
}

TEST(NslTest, FractionOfNuclearProteins) {
  const Graph g = oracle::to_graph(kTriangleAndEdge);
  const auto p = Partition::from_labels({0, 0, 0, 1, 1});
  LocalizationMap loc{{P("v000"), {"nucleus", "cytosol"}}, {P("v001"), {"cytosol"}},
                      {P("v003"), {"nucleus"}},            {P("v004"), {"nucleus"}}};
  EXPECT_NEAR(module_nsl(g, p, 0, loc), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(module_nsl(g, p, 1, loc), 1.0);
  EXPECT_EQ(module_nsl(g, p, 1, {}), 0.0);
}

TEST(TfTest, IsolatedTriangleAndBoundary) {
  const Graph g = oracle::to_graph(kTriangleAndEdge);
  EXPECT_EQ(module_tf(g, Partition::from_labels({0, 0, 0, 1, 1}), 0), 1.0);
  const Graph bridged = oracle::to_graph(oracle::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}}));
  const auto p = Partition::from_labels({0, 0, 0, 1, 1});
  const auto c = module_edge_counts(bridged, p, 0);
  EXPECT_EQ(c.internal, 3u);
  EXPECT_EQ(c.boundary, 1u);
  EXPECT_NEAR(module_tf(bridged, p, 0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(module_tf(bridged, p, 1), 0.0);
}

TEST(TfTest, EdgeSumsMatchGraph) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::to_graph(oracle::random_graph(10 + trial, 0.15, rng));
    if (g.edge_count() == 0) continue;
    const auto p = fast_unfolding(g);
    std::size_t internal = 0, boundary = 0, cross = 0;
    for (ModuleId m = 0; m < p.module_count; ++m) {
      const auto c = module_edge_counts(g, p, m);
      internal += c.internal;
      boundary += c.boundary;
      EXPECT_DOUBLE_EQ(module_tf(g, p, m),
                       (static_cast<double>(c.internal) - static_cast<double>(c.boundary)) / static_cast<double>(c.nodes));
    }
    for (auto [u, v] : g.edges()) cross += p.module_of[u] != p.module_of[v];
    EXPECT_EQ(boundary, 2 * cross);
    EXPECT_EQ(internal + cross, g.edge_count());
  }
}

TEST(SelectTest, EmptyWhenThresholdsUnreachable) {
  const auto s = scores_from({{0.1, 0.5, 1.0}, {-0.2, 0.9, 0.1}});
  const auto sel = select_critical(s, {10.0, 10.0, 0.0});
  EXPECT_TRUE(sel.critical.empty());
}

TEST(SelectTest, NoTopologyMeansUnion) {
  const auto s = scores_from({{0.1, 0.0, 1.0}, {-0.2, 0.9, 0.5}, {-0.3, 0.1, 0.7}});
  const auto sel = select_critical(s, {0.0, 0.5, -100.0});
  EXPECT_TRUE(sel.topology.empty());
  EXPECT_EQ(sel.critical, (std::set<ModuleId>{0, 1}));
}

TEST(SelectTest, TopologyExcludesOnlyFromSubcellular) {
  const auto s = scores_from({{0.1, 0.9, 0.1}, {-0.2, 0.9, 0.1}, {-0.2, 0.9, 0.9}});
  const auto sel = select_critical(s, {0.0, 0.5, 0.25});
  EXPECT_EQ(sel.topology, (std::set<ModuleId>{0, 1}));
  EXPECT_EQ(sel.critical, (std::set<ModuleId>{0, 2}));
}

TEST(SelectTest, ReferenceThresholdGrid) {
  // Critical-module counts recomputed from the reference module scores at
  // th3 = 0.25 for th1 in {0.015, -0.005, -0.02} x th2 in {1.5, 2}.
  const auto& rows = oracle::dip_modules();
  std::vector<std::array<double, 3>> raw;
  for (const auto& r : rows) raw.push_back({r.corr, r.nsl, r.tf});
  const auto scores = scores_from(raw);
  const struct {
    double th1, th2;
    std::size_t expected;
  } grid[] = {{0.015, 1.5, 15}, {0.015, 2, 13}, {-0.005, 1.5, 17}, {-0.005, 2, 15}, {-0.02, 1.5, 20}, {-0.02, 2, 18}};
  for (const auto& g : grid) {
    const auto sel = select_critical(scores, {g.th1, g.th2, 0.25});
    EXPECT_EQ(sel.critical.size(), g.expected) << g.th1 << " " << g.th2;
    EXPECT_EQ(oracle::critical_count(rows, g.th1, g.th2, 0.25), g.expected);
  }
}

TEST(SelectTest, Monotone) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::array<double, 3>> raw(12);
    for (auto& r : raw) r = {u(rng), u(rng), u(rng)};
    const auto s = scores_from(raw);
    const Thresholds lo{u(rng), u(rng), u(rng)};
    const Thresholds hi{lo.conservatism + 0.3, lo.subcellular + 0.3, lo.topology - 0.3};
    const auto a = select_critical(s, lo);
    const auto b = select_critical(s, hi);
    EXPECT_TRUE(std::includes(a.conservatism.begin(), a.conservatism.end(), b.conservatism.begin(), b.conservatism.end()));
    EXPECT_TRUE(std::includes(a.subcellular.begin(), a.subcellular.end(), b.subcellular.begin(), b.subcellular.end()));
    EXPECT_TRUE(std::includes(a.topology.begin(), a.topology.end(), b.topology.begin(), b.topology.end()));
    for (ModuleId m = 0; m < 12; ++m) {
      const bool expected = a.conservatism.contains(m) || (a.subcellular.contains(m) && !a.topology.contains(m));
      EXPECT_EQ(a.critical.contains(m), expected);
    }
  }
}

TEST(CmpinTest, EmptySelectionAndFullSelection) {
  // RD-PIN: two components; the maximal one is clustered.
  const Graph rd = oracle::to_graph(oracle::from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {5, 6}}));
  const Graph clustered = build_graph(maximal_component_edges(rd));
  const Partition p = fast_unfolding(clustered);
  CriticalSelection none;
  EXPECT_EQ(build_cmpin(rd, clustered, p, none).edge_count(), 0u);
  EXPECT_EQ(build_cmpin(rd, clustered, p, none).node_count(), rd.node_count());
  CriticalSelection all;
  for (ModuleId m = 0; m < p.module_count; ++m) all.critical.insert(m);
  const Graph cm = build_cmpin(rd, clustered, p, all);
  EXPECT_EQ(cm.edge_count(), maximal_component_edges(rd).size());
  EXPECT_EQ(cm.to_edge_list(), maximal_component_edges(rd));
}

TEST(CmpinTest, KeepsEdgesBetweenDifferentCriticalModules) {
  const Graph rd = oracle::to_graph(oracle::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}}));
  const Graph clustered = build_graph(maximal_component_edges(rd));
  const Partition p = fast_unfolding(clustered);
  ASSERT_EQ(p.module_count, 2u);
  CriticalSelection both;
  both.critical = {0, 1};
  EXPECT_EQ(build_cmpin(rd, clustered, p, both).edge_count(), 7u);
  CriticalSelection first;
  first.critical = {0};
  EXPECT_EQ(build_cmpin(rd, clustered, p, first).edge_count(), 3u);
}

TEST(ScoreModulesTest, CountsEssentials) {
  const Graph g = oracle::to_graph(kTriangleAndEdge);
  const auto p = Partition::from_labels({0, 0, 0, 1, 1});
  AnnotationStore a;
  a.essential = {P("v000"), P("v004"), P("zzz")};
  const auto s = score_modules(g, p, a);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].essential_count, 1u);
  EXPECT_EQ(s[1].essential_count, 1u);
  EXPECT_EQ(s[0].n_nodes, 3u);
  EXPECT_EQ(s[0].internal_edges, 3u);
}
