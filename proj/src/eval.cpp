#include "pinrefine/eval.hpp"

#include <ostream>
#include <string>

#include "pinrefine/format.hpp"

namespace pinrefine {

namespace {

double ratio(std::size_t num, std::size_t den, const char* name, std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

GoldCoverage gold_coverage(const Ranking& r, const EssentialSet& gold) {
  GoldCoverage c;
  for (const auto& e : r.entries) {
    if (gold.contains(e.id)) ++c.present;
  }
  c.absent = gold.size() - c.present;
  return c;
}

std::map<std::size_t, std::size_t> topk_counts(const Ranking& r, const EssentialSet& gold,
                                              const std::vector<std::size_t>& ks) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t k : ks) {
    if (k > r.size()) {
      throw Error("top-" + std::to_string(k) + " exceeds the ranking length " + std::to_string(r.size()));
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) hits += gold.contains(r.entries[i].id) ? 1 : 0;
    out[k] = hits;
  }
  return out;
}

std::vector<std::size_t> jackknife_curve(const Ranking& r, const EssentialSet& gold, std::size_t length) {
  if (length > r.size()) {
    throw Error("jackknife length " + std::to_string(length) + " exceeds the ranking length " +
                std::to_string(r.size()));
  }
  std::vector<std::size_t> curve(length);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < length; ++i) {
    hits += gold.contains(r.entries[i].id) ? 1 : 0;
    curve[i] = hits;
  }
  return curve;
}

ClassificationMetrics classification_metrics(const Ranking& r, const EssentialSet& gold, std::size_t k) {
  if (k > r.size()) throw Error("cutoff " + std::to_string(k) + " exceeds the ranking length");
  ClassificationMetrics m;
  auto& c = m.counts;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const bool essential = gold.contains(r.entries[i].id);
    if (i < k) {
      ++(essential ? c.tp : c.fp);
    } else {
      ++(essential ? c.fn : c.tn);
    }
  }
  m.sn = ratio(c.tp, c.tp + c.fn, "SN", m.undefined);
  m.sp = ratio(c.tn, c.fp + c.tn, "SP", m.undefined);
  m.ppv = ratio(c.tp, c.tp + c.fp, "PPV", m.undefined);
  m.npv = ratio(c.tn, c.tn + c.fn, "NPV", m.undefined);
  // 2 SN PPV / (SN + PPV) in count form; 0 when TP = 0.
  m.fm = c.tp == 0 ? 0.0 : ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn, "FM", m.undefined);
  m.acc = ratio(c.tp + c.tn, r.size(), "ACC", m.undefined);
  return m;
}

PrCurve pr_curve_and_auc(const Ranking& r, const EssentialSet& gold) {
  const std::size_t positives = gold_coverage(r, gold).present;
  if (positives == 0) throw Error("precision-recall is undefined without gold proteins in the ranking");
  PrCurve curve;
  curve.points.reserve(r.size());
  std::size_t hits = 0;
  double previous_recall = 0.0;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    hits += gold.contains(r.entries[k - 1].id) ? 1 : 0;
    const double recall = static_cast<double>(hits) / static_cast<double>(positives);
    const double precision = static_cast<double>(hits) / static_cast<double>(k);
    curve.points.push_back({k, recall, precision});
    curve.auc += (recall - previous_recall) * precision;
    previous_recall = recall;
  }
  return curve;
}

EvalReport evaluate(const Ranking& r, const EssentialSet& gold, const std::vector<std::size_t>& ks) {
  EvalReport report;
  report.method = r.method;
  const auto coverage = gold_coverage(r, gold);
  report.positives = coverage.present;
  report.gold_absent = coverage.absent;
  std::vector<std::size_t> usable;
  for (std::size_t k : ks) {
    if (k <= r.size()) usable.push_back(k);
  }
  report.topk = topk_counts(r, gold, usable);
  report.jackknife = jackknife_curve(r, gold, coverage.present);
  report.metrics = classification_metrics(r, gold, coverage.present);
  report.prauc = coverage.present > 0 ? pr_curve_and_auc(r, gold).auc : 0.0;
  return report;
}

void write_metrics_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "method,SN,SP,PPV,NPV,FM,ACC,TopP\n";
  for (const auto& rep : reports) {
    const auto& m = rep.metrics;
    out << method_name(rep.method) << ',' << sig6(m.sn) << ',' << sig6(m.sp) << ',' << sig6(m.ppv) << ','
        << sig6(m.npv) << ',' << sig6(m.fm) << ',' << sig6(m.acc) << ',' << m.counts.tp << '\n';
  }
}

void write_topk_csv(std::ostream& out, const std::vector<EvalReport>& reports, const std::vector<std::size_t>& ks) {
  out << "# PRAUC = average precision: sum over cutoffs of (recall_k - recall_k-1) * precision_k\n";
  out << "method";
  for (std::size_t k : ks) out << ",top" << k;
  out << ",P,PRAUC\n";
  for (const auto& rep : reports) {
    out << method_name(rep.method);
    for (std::size_t k : ks) {
      const auto it = rep.topk.find(k);
      out << ',';
      if (it != rep.topk.end()) out << it->second;
    }
    out << ',' << rep.positives << ',' << sig6(rep.prauc) << '\n';
  }
}

void write_pr_curve_csv(std::ostream& out, const PrCurve& curve) {
  out << "k,recall,precision\n";
  for (const auto& p : curve.points) out << p.k << ',' << sig6(p.recall) << ',' << sig6(p.precision) << '\n';
}

void write_jackknife_csv(std::ostream& out, const std::vector<std::size_t>& curve) {
  out << "rank,essential\n";
  for (std::size_t i = 0; i < curve.size(); ++i) out << i + 1 << ',' << curve[i] << '\n';
}

}  // namespace pinrefine
