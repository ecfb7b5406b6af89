#include "pinrefine/refine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace pinrefine {

ActivityProfile::ActivityProfile(double threshold, const std::vector<bool>& active)
    : threshold_(threshold), time_points_(active.size()), words_((active.size() + 63) / 64, 0) {
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (active[k]) words_[k / 64] |= std::uint64_t{1} << (k % 64);
  }
}

bool ActivityProfile::active(std::size_t k) const { return ((words_.at(k / 64) >> (k % 64)) & 1U) != 0; }

bool ActivityProfile::any_active() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool ActivityProfile::coactive(const ActivityProfile& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

ActivityProfile activity_threshold(std::span<const double> values) {
  if (values.empty()) throw Error("activity threshold needs at least one time point");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double threshold = mean + std::sqrt(sq / n);

  std::vector<bool> active(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) active[k] = values[k] > threshold;
  return ActivityProfile(threshold, active);
}

TierResult build_dpin(const Graph& spin, const ExpressionTable& expression, std::size_t time_points) {
  if (expression.time_points != time_points) {
    throw Error("expression table has " + std::to_string(expression.time_points) + " time points, expected " +
                std::to_string(time_points));
  }
  std::vector<std::optional<ActivityProfile>> profiles(spin.node_count());
  for (NodeIndex v = 0; v < spin.node_count(); ++v) {
    if (const auto* values = expression.find(spin.id(v))) profiles[v] = activity_threshold(*values);
  }

  TierResult result;
  result.graph = spin.filter_edges([&](NodeIndex u, NodeIndex v) {
    if (!profiles[u] || !profiles[v]) {
      ++result.log.removed_missing_data;
      return false;
    }
    if (!profiles[u]->coactive(*profiles[v])) {
      ++result.log.removed_by_rule;
      return false;
    }
    ++result.log.kept;
    return true;
  });
  return result;
}

TierResult build_rdpin(const Graph& dpin, const LocalizationMap& localization) {
  std::vector<const CompartmentSet*> sets(dpin.node_count(), nullptr);
  for (NodeIndex v = 0; v < dpin.node_count(); ++v) {
    const auto it = localization.find(dpin.id(v));
    if (it != localization.end() && !it->second.empty()) sets[v] = &it->second;
  }

  auto intersects = [](const CompartmentSet& a, const CompartmentSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        return true;
      }
    }
    return false;
  };

  TierResult result;
  result.graph = dpin.filter_edges([&](NodeIndex u, NodeIndex v) {
    if (sets[u] == nullptr || sets[v] == nullptr) {
      ++result.log.removed_missing_data;
      return false;
    }
    if (!intersects(*sets[u], *sets[v])) {
      ++result.log.removed_by_rule;
      return false;
    }
    ++result.log.kept;
    return true;
  });
  return result;
}

void check_refinement(const Graph& super, const Graph& sub, const char* what) {
  if (super.ids() != sub.ids()) throw Error(std::string(what) + ": node sets differ between tiers");
  for (const auto& [u, v] : sub.edges()) {
    if (!super.has_edge(u, v)) {
      throw Error(std::string(what) + ": edge " + sub.id(u).str() + "-" + sub.id(v).str() +
                  " is not present in the parent tier");
    }
  }
}

}  // namespace pinrefine
