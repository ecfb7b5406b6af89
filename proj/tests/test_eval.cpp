#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pinrefine/eval.hpp"

using namespace pinrefine;

namespace {

// Ranking over ids r00..r(n-1) in the given order with descending scores.
Ranking ranking_of(std::size_t n) {
  Ranking r;
  r.method = CentralityMethod::DC;
  for (std::size_t i = 0; i < n; ++i) {
    r.entries.push_back({ProteinId("r" + std::string(i < 10 ? "0" : "") + std::to_string(i)),
                         static_cast<double>(n - i)});
  }
  return r;
}

EssentialSet gold_at(const Ranking& r, const std::vector<std::size_t>& positions) {
  EssentialSet g;
  for (auto p : positions) g.insert(r.entries[p].id);
  return g;
}

}  // namespace

TEST(TopKTest, AllGoldAndNoGold) {
  const auto r = ranking_of(10);
  EssentialSet all;
  for (const auto& e : r.entries) all.insert(e.id);
  const auto full = topk_counts(r, all, {1, 5, 10});
  EXPECT_EQ(full.at(1), 1u);
  EXPECT_EQ(full.at(5), 5u);
  EXPECT_EQ(full.at(10), 10u);
  const auto none = topk_counts(r, {}, {1, 5, 10});
  EXPECT_EQ(none.at(10), 0u);
  EXPECT_THROW(topk_counts(r, all, {11}), Error);
}

TEST(JackknifeTest, PerfectAndWorst) {
  const auto r = ranking_of(10);
  EXPECT_EQ(jackknife_curve(r, gold_at(r, {0, 1, 2}), 3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(jackknife_curve(r, gold_at(r, {7, 8, 9}), 3), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_THROW(jackknife_curve(r, {}, 11), Error);
}

TEST(MetricsTest, IdentitiesAtCutoffP) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 40;
    const auto r = ranking_of(n);
    std::bernoulli_distribution coin(0.3);
    EssentialSet gold;
    for (const auto& e : r.entries) {
      if (coin(rng)) gold.insert(e.id);
    }
    const std::size_t P = gold.size();
    const auto m = classification_metrics(r, gold, P);
    EXPECT_EQ(m.sn, m.ppv);
    EXPECT_EQ(m.sp, m.npv);
    EXPECT_EQ(m.fm, m.sn);
    const auto& c = m.counts;
    EXPECT_EQ(c.tp + c.fp + c.tn + c.fn, n);
    EXPECT_EQ(m.acc, static_cast<double>(c.tp + c.tn) / static_cast<double>(n));
    for (double x : {m.sn, m.sp, m.ppv, m.npv, m.fm, m.acc}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(MetricsTest, PerfectRankingAllOnes) {
  const auto r = ranking_of(10);
  const auto m = classification_metrics(r, gold_at(r, {0, 1, 2, 3}), 4);
  for (double x : {m.sn, m.sp, m.ppv, m.npv, m.fm, m.acc}) EXPECT_EQ(x, 1.0);
  EXPECT_TRUE(m.undefined.empty());
}

TEST(MetricsTest, DegenerateCutoffsFlagged) {
  const auto r = ranking_of(5);
  const auto gold = gold_at(r, {1});
  const auto zero = classification_metrics(r, gold, 0);
  EXPECT_EQ(zero.ppv, 0.0);
  EXPECT_FALSE(zero.undefined.empty());
  EXPECT_EQ(zero.fm, 0.0);
  const auto all = classification_metrics(r, gold, 5);
  EXPECT_EQ(all.npv, 0.0);
  EXPECT_FALSE(all.undefined.empty());
}

TEST(PrTest, PerfectRankingIsOne) {
  const auto r = ranking_of(8);
  EXPECT_DOUBLE_EQ(pr_curve_and_auc(r, gold_at(r, {0, 1, 2})).auc, 1.0);
}

TEST(PrTest, GoldLastQuarter) {
  const auto r = ranking_of(5);
  const auto c = pr_curve_and_auc(r, gold_at(r, {4}));
  EXPECT_DOUBLE_EQ(c.auc, 0.2);
  const auto r4 = ranking_of(4);  // P = 1, N = 3: gold at rank 4
  EXPECT_DOUBLE_EQ(pr_curve_and_auc(r4, gold_at(r4, {3})).auc, 0.25);
}

TEST(PrTest, NoPositivesThrows) {
  EXPECT_THROW(pr_curve_and_auc(ranking_of(3), {}), Error);
}

TEST(PrTest, MatchesAveragePrecisionOracle) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto r = ranking_of(n);
    std::bernoulli_distribution coin(0.4);
    std::vector<bool> is_gold(n);
    EssentialSet gold;
    for (std::size_t i = 0; i < n; ++i) {
      is_gold[i] = coin(rng);
      if (is_gold[i]) gold.insert(r.entries[i].id);
    }
    if (gold.empty()) continue;
    const auto c = pr_curve_and_auc(r, gold);
    EXPECT_NEAR(c.auc, oracle::average_precision(is_gold), 1e-12);
    EXPECT_EQ(c.points.size(), n);
    EXPECT_DOUBLE_EQ(c.points.back().recall, 1.0);
  }
}

TEST(EvaluateTest, ReportConsistency) {
  const auto r = ranking_of(30);
  EssentialSet gold = gold_at(r, {0, 3, 4, 9, 17, 28});
  gold.insert(ProteinId("absent"));
  const auto rep = evaluate(r, gold, {5, 10, 40});
  EXPECT_EQ(rep.positives, 6u);
  EXPECT_EQ(rep.gold_absent, 1u);
  EXPECT_EQ(rep.topk.count(40), 0u);  // larger than the ranking: skipped
  ASSERT_EQ(rep.jackknife.size(), 6u);
  for (std::size_t i = 1; i < rep.jackknife.size(); ++i) {
    EXPECT_GE(rep.jackknife[i], rep.jackknife[i - 1]);
    EXPECT_LE(rep.jackknife[i] - rep.jackknife[i - 1], 1u);
  }
  EXPECT_LE(rep.jackknife.back(), rep.positives);
  EXPECT_EQ(rep.topk.at(5), jackknife_curve(r, gold, 5).back());
  EXPECT_EQ(rep.metrics.counts.tp, rep.jackknife.back());
}

TEST(EvaluateTest, CsvHeaders) {
  const auto r = ranking_of(6);
  const auto rep = evaluate(r, gold_at(r, {0, 2}), {2, 4});
  std::ostringstream metrics, topk;
  write_metrics_csv(metrics, {rep});
  write_topk_csv(topk, {rep}, {2, 4});
  EXPECT_EQ(metrics.str().substr(0, metrics.str().find('\n')), "method,SN,SP,PPV,NPV,FM,ACC,TopP");
  EXPECT_NE(topk.str().find("method,top2,top4,P,PRAUC"), std::string::npos);
  EXPECT_EQ(topk.str()[0], '#');
}
