#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "pinrefine/graph.hpp"

namespace pinrefine {

enum class CentralityMethod { DC, LAC, NC, DMNC, TP, LID, CC, BC, PR, LR };

inline constexpr std::array<CentralityMethod, 10> kAllMethods = {
    CentralityMethod::DC, CentralityMethod::LAC, CentralityMethod::NC, CentralityMethod::DMNC,
    CentralityMethod::TP, CentralityMethod::LID, CentralityMethod::CC, CentralityMethod::BC,
    CentralityMethod::PR, CentralityMethod::LR,
};

std::string_view method_name(CentralityMethod method);
std::optional<CentralityMethod> parse_method(std::string_view name);

bool is_local(CentralityMethod method);
bool is_path(CentralityMethod method);
bool is_walk(CentralityMethod method);

struct CentralityOptions {
  double dmnc_epsilon = 1.7;
  double tp_sigma = 1.0;
  double damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iterations = 1000;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct RankedProtein {
  ProteinId id;
  double score = 0.0;
  friend bool operator==(const RankedProtein&, const RankedProtein&) = default;
};

// Descending score, ties by ascending protein id. Covers every node once.
struct Ranking {
  CentralityMethod method = CentralityMethod::DC;
  std::vector<RankedProtein> entries;

  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// Raw per-node scores, indexed by NodeIndex.
std::vector<double> degree_scores(const Graph& g);
std::vector<double> lac_scores(const Graph& g);
std::vector<double> nc_scores(const Graph& g);
std::vector<double> dmnc_scores(const Graph& g, double epsilon);
std::vector<double> lid_scores(const Graph& g);
// Component-restricted closeness with Wasserman-Faust scaling.
std::vector<double> closeness_scores(const Graph& g, unsigned threads = 1);
// Exact shortest-path betweenness over unordered pairs.
std::vector<double> betweenness_scores(const Graph& g, unsigned threads = 1);
// sum over u != v with d(u, v) <= ceil(3 sigma / sqrt 2) of exp(-(d / sigma)^2).
std::vector<double> topological_potential_scores(const Graph& g, double sigma, unsigned threads = 1);
std::vector<double> pagerank_scores(const Graph& g, const CentralityOptions& options);
std::vector<double> leaderrank_scores(const Graph& g, const CentralityOptions& options);

std::vector<double> centrality_scores(const Graph& g, CentralityMethod method, const CentralityOptions& options = {});

Ranking make_ranking(const Graph& g, CentralityMethod method, const std::vector<double>& scores);

// Family-specific entry points; each rejects methods from another family.
Ranking compute_local(const Graph& g, CentralityMethod method, const CentralityOptions& options = {});
Ranking compute_path(const Graph& g, CentralityMethod method, const CentralityOptions& options = {});
Ranking compute_walk(const Graph& g, CentralityMethod method, const CentralityOptions& options = {});
Ranking compute_ranking(const Graph& g, CentralityMethod method, const CentralityOptions& options = {});

// "rank<TAB>protein<TAB>score" with a header line, scores at 6 significant
// digits.
void write_ranking(std::ostream& out, const Ranking& ranking);
// Restores the order of a ranking dump (scores at dump precision).
Ranking read_ranking(std::istream& in, CentralityMethod method);

}  // namespace pinrefine
