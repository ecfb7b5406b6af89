#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "pinrefine/centrality.hpp"
#include "pinrefine/ingest.hpp"

namespace pinrefine {

inline const std::vector<std::size_t> kDefaultTopK = {100, 200, 300, 400, 500, 600};

// Gold proteins split by whether they appear in the ranked universe.
struct GoldCoverage {
  std::size_t present = 0;  // P
  std::size_t absent = 0;
};

GoldCoverage gold_coverage(const Ranking& r, const EssentialSet& gold);

// |top-k ∩ gold| for every k. Throws when a k exceeds the ranking length.
std::map<std::size_t, std::size_t> topk_counts(const Ranking& r, const EssentialSet& gold,
                                              const std::vector<std::size_t>& ks);

// j[i] = |top-(i+1) ∩ gold| for i < length.
std::vector<std::size_t> jackknife_curve(const Ranking& r, const EssentialSet& gold, std::size_t length);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// Top-k predicted essential, the rest predicted non-essential. A metric
// whose denominator is zero is reported as 0 and listed in `undefined`.
struct ClassificationMetrics {
  ConfusionCounts counts;
  double sn = 0.0;
  double sp = 0.0;
  double ppv = 0.0;
  double npv = 0.0;
  double fm = 0.0;
  double acc = 0.0;
  std::vector<std::string> undefined;
};

ClassificationMetrics classification_metrics(const Ranking& r, const EssentialSet& gold, std::size_t k);

struct PrPoint {
  std::size_t k = 0;
  double recall = 0.0;
  double precision = 0.0;
};

struct PrCurve {
  std::vector<PrPoint> points;  // one per cutoff k = 1..|ranking|
  double auc = 0.0;             // average precision (step rule)
};

// Throws when no gold protein is present in the ranking.
PrCurve pr_curve_and_auc(const Ranking& r, const EssentialSet& gold);

struct EvalReport {
  CentralityMethod method = CentralityMethod::DC;
  std::map<std::size_t, std::size_t> topk;
  std::vector<std::size_t> jackknife;
  ClassificationMetrics metrics;  // at cutoff k = P
  double prauc = 0.0;
  std::size_t positives = 0;  // P
  std::size_t gold_absent = 0;
};

// Full evaluation. ks larger than the ranking are skipped.
EvalReport evaluate(const Ranking& r, const EssentialSet& gold, const std::vector<std::size_t>& ks);

// CSV: method,SN,SP,PPV,NPV,FM,ACC,TopP
void write_metrics_csv(std::ostream& out, const std::vector<EvalReport>& reports);
// CSV: method,top<k>...,PRAUC with a header comment naming the integrator.
void write_topk_csv(std::ostream& out, const std::vector<EvalReport>& reports, const std::vector<std::size_t>& ks);
void write_pr_curve_csv(std::ostream& out, const PrCurve& curve);
void write_jackknife_csv(std::ostream& out, const std::vector<std::size_t>& curve);

}  // namespace pinrefine
