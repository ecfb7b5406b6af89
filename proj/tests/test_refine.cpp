#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pinrefine/refine.hpp"

using namespace pinrefine;

namespace {

ProteinId P(const std::string& s) { return ProteinId(s); }

Graph pair_graph(const char* a, const char* b) {
  return build_graph(normalize_edges({{P(a), P(b)}}));
}

ExpressionTable table(std::size_t T, std::initializer_list<std::pair<const char*, std::vector<double>>> rows) {
  ExpressionTable t;
  t.time_points = T;
  for (const auto& [id, v] : rows) t.profiles[P(id)] = v;
  return t;
}

}  // namespace

TEST(ActivityTest, ConstantProfileNeverActive) {
  const std::vector<double> v = {2.5, 2.5, 2.5};
  const auto a = activity_threshold(v);
  EXPECT_DOUBLE_EQ(a.threshold(), 2.5);
  EXPECT_FALSE(a.any_active());
}

TEST(ActivityTest, TwoPointProfile) {
  const std::vector<double> v = {0, 2};
  const auto a = activity_threshold(v);
  EXPECT_DOUBLE_EQ(a.threshold(), 2.0);
  EXPECT_FALSE(a.active(0));
  EXPECT_FALSE(a.active(1));
}

TEST(ActivityTest, FourPointProfileMatchesIndependentStats) {
  const std::vector<double> v = {0, 0, 3, 3};
  const auto a = activity_threshold(v);
  EXPECT_DOUBLE_EQ(oracle::mean(v), 1.5);
  EXPECT_DOUBLE_EQ(oracle::population_stddev(v), 1.5);
  EXPECT_DOUBLE_EQ(a.threshold(), 3.0);
  EXPECT_FALSE(a.any_active());
}

TEST(ActivityTest, FuzzedAgainstOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + trial % 90);
    for (auto& x : v) x = noise(rng);
    const auto a = activity_threshold(v);
    const double tau = oracle::mean(v) + oracle::population_stddev(v);
    EXPECT_NEAR(a.threshold(), tau, 1e-12);
    for (std::size_t k = 0; k < v.size(); ++k) {
      // Only compare points clear of rounding noise at the threshold.
      if (std::abs(v[k] - tau) > 1e-9) EXPECT_EQ(a.active(k), v[k] > tau);
    }
  }
}

TEST(DpinTest, CoactiveEdgeKept) {
  // u active at {1,3}, v active at {2,3}
  const auto t = table(6, {{"u", {0, 1, 0, 1, 0, 0}}, {"v", {0, 0, 1, 1, 0, 0}}});
  const auto r = build_dpin(pair_graph("u", "v"), t, 6);
  EXPECT_EQ(r.graph.edge_count(), 1u);
  EXPECT_EQ(r.log.kept, 1u);
  // half-high profiles sit exactly at tau and are never active
  const auto flat = table(4, {{"u", {0, 9, 0, 9}}, {"v", {0, 0, 9, 9}}});
  EXPECT_EQ(build_dpin(pair_graph("u", "v"), flat, 4).graph.edge_count(), 0u);
}

TEST(DpinTest, InactiveProteinLosesEdges) {
  const Graph s = build_graph(normalize_edges({{P("u"), P("a")}, {P("u"), P("b")}, {P("a"), P("b")}}));
  const auto t = table(3, {{"u", {1, 1, 1}}, {"a", {0, 0, 5}}, {"b", {0, 0, 5}}});
  const auto r = build_dpin(s, t, 3);
  EXPECT_EQ(r.graph.edge_count(), 1u);
  EXPECT_EQ(r.graph.node_count(), 3u);
  EXPECT_EQ(r.log.removed_by_rule, 2u);
}

TEST(DpinTest, MissingExpressionRemovesEdge) {
  const auto t = table(3, {{"u", {0, 0, 5}}});
  const auto r = build_dpin(pair_graph("u", "v"), t, 3);
  EXPECT_EQ(r.graph.edge_count(), 0u);
  EXPECT_EQ(r.log.removed_missing_data, 1u);
}

TEST(DpinTest, TimePointMismatchThrows) {
  const auto t = table(3, {{"u", {0, 0, 5}}});
  EXPECT_THROW(build_dpin(pair_graph("u", "v"), t, 4), Error);
}

TEST(RdpinTest, SharedCompartmentKept) {
  LocalizationMap loc{{P("u"), {"nucleus"}}, {P("v"), {"nucleus", "cytosol"}}};
  EXPECT_EQ(build_rdpin(pair_graph("u", "v"), loc).graph.edge_count(), 1u);
}

TEST(RdpinTest, DisjointCompartmentsRemoved) {
  LocalizationMap loc{{P("u"), {"nucleus"}}, {P("v"), {"cytosol"}}};
  const auto r = build_rdpin(pair_graph("u", "v"), loc);
  EXPECT_EQ(r.graph.edge_count(), 0u);
  EXPECT_EQ(r.log.removed_by_rule, 1u);
}

TEST(RdpinTest, MissingLocalizationRemovesEdge) {
  LocalizationMap loc{{P("u"), {"nucleus"}}};
  const auto r = build_rdpin(pair_graph("u", "v"), loc);
  EXPECT_EQ(r.graph.edge_count(), 0u);
  EXPECT_EQ(r.log.removed_missing_data, 1u);
}

TEST(RefineTest, FuzzedTiersAreNested) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto& vocab = default_compartments();
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::bernoulli_distribution coin(0.9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + trial % 25;
    const Graph s = oracle::to_graph(oracle::random_graph(n, 0.3, rng));
    ExpressionTable expr;
    expr.time_points = 8;
    LocalizationMap loc;
    for (const auto& id : s.ids()) {
      if (coin(rng)) {
        std::vector<double> v(8);
        for (auto& x : v) x = noise(rng);
        expr.profiles[id] = v;
      }
      if (coin(rng)) loc[id] = {vocab[pick(rng)], vocab[pick(rng)]};
    }
    const auto d = build_dpin(s, expr, 8);
    const auto rd = build_rdpin(d.graph, loc);
    EXPECT_NO_THROW(check_refinement(s, d.graph, "D-PIN"));
    EXPECT_NO_THROW(check_refinement(d.graph, rd.graph, "RD-PIN"));
    EXPECT_EQ(d.log.kept + d.log.removed_by_rule + d.log.removed_missing_data, s.edge_count());
    EXPECT_EQ(rd.log.kept + rd.log.removed_by_rule + rd.log.removed_missing_data, d.graph.edge_count());
  }
}

TEST(RefineTest, CheckRefinementDetectsViolations) {
  const Graph a = pair_graph("u", "v");
  const Graph b = pair_graph("u", "w");
  EXPECT_THROW(check_refinement(a, b, "x"), Error);
  const Graph c = build_graph(normalize_edges({{P("u"), P("v")}, {P("v"), P("w")}}));
  const Graph d = build_graph(normalize_edges({{P("u"), P("w")}}), {P("v")});
  EXPECT_THROW(check_refinement(c, d, "x"), Error);
}
