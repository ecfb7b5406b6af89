#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pinrefine/graph.hpp"
#include "pinrefine/ingest.hpp"

namespace pinrefine {

// Activity of one protein over T time points: active at k iff the
// expression level at k is strictly above mean + population stddev.
class ActivityProfile {
 public:
  ActivityProfile() = default;
  ActivityProfile(double threshold, const std::vector<bool>& active);

  double threshold() const noexcept { return threshold_; }
  std::size_t time_points() const noexcept { return time_points_; }
  bool active(std::size_t k) const;
  bool any_active() const noexcept;
  // True when both profiles share at least one active time point.
  bool coactive(const ActivityProfile& other) const;

 private:
  double threshold_ = 0.0;
  std::size_t time_points_ = 0;
  std::vector<std::uint64_t> words_;
};

ActivityProfile activity_threshold(std::span<const double> values);

// Per-edge-class counts of a tier filter.
struct FilterLog {
  std::size_t kept = 0;
  std::size_t removed_by_rule = 0;
  std::size_t removed_missing_data = 0;
};

struct TierResult {
  Graph graph;
  FilterLog log;
};

// Keeps (u, v) iff u and v are active at a common time point. Edges touching
// a protein without an expression profile are removed.
TierResult build_dpin(const Graph& spin, const ExpressionTable& expression, std::size_t time_points);

// Keeps (u, v) iff the compartment sets of u and v intersect. Edges touching
// a protein without localization data are removed.
TierResult build_rdpin(const Graph& dpin, const LocalizationMap& localization);

// Throws when sub's edge set is not contained in super's, or the node sets
// differ.
void check_refinement(const Graph& super, const Graph& sub, const char* what);

}  // namespace pinrefine
