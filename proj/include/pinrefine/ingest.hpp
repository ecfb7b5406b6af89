#pragma once

// Readers and writers for the five TSV input kinds.
//
// Common conventions: UTF-8 text, blank lines and lines whose first
// non-blank character is '#' are skipped. Columns are separated by a tab or
// a run of spaces. In localization rows everything after the id is the
// compartment name, since names like "plasma membrane" contain a space.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pinrefine/types.hpp"

namespace pinrefine {

using ProteinPair = std::pair<ProteinId, ProteinId>;

// Normalized edge list: every pair has first < second, pairs are sorted and
// unique, no self pairs.
struct EdgeList {
  std::vector<ProteinPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

struct EdgeParseStats {
  std::size_t data_rows = 0;
  std::size_t kept = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

struct ParsedEdges {
  EdgeList edges;
  EdgeParseStats stats;
};

// Sorts, orients and de-duplicates raw pairs. Self pairs are removed.
EdgeList normalize_edges(std::vector<ProteinPair> raw, EdgeParseStats* stats = nullptr);

ParsedEdges parse_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const EdgeList& edges);

inline constexpr std::size_t kDefaultTimePoints = 36;

struct ExpressionTable {
  std::size_t time_points = kDefaultTimePoints;
  std::map<ProteinId, std::vector<double>> profiles;

  const std::vector<double>* find(const ProteinId& id) const;
  friend bool operator==(const ExpressionTable&, const ExpressionTable&) = default;
};

struct ParsedExpression {
  ExpressionTable table;
  std::vector<std::string> warnings;
};

ParsedExpression parse_expression(std::istream& in, std::size_t time_points);
void write_expression(std::ostream& out, const ExpressionTable& table);

using CompartmentSet = std::set<std::string>;
using LocalizationMap = std::map<ProteinId, CompartmentSet>;

inline constexpr const char* kNucleus = "nucleus";

// The eleven default compartments.
const std::vector<std::string>& default_compartments();

LocalizationMap parse_localization(std::istream& in,
                                   const std::vector<std::string>& vocabulary = default_compartments());
void write_localization(std::ostream& out, const LocalizationMap& loc);

using HomologyMap = std::map<ProteinId, double>;

HomologyMap parse_homology(std::istream& in);
void write_homology(std::ostream& out, const HomologyMap& homology);
// Proteins absent from the map score 0.
double homology_score(const HomologyMap& homology, const ProteinId& id);

using EssentialSet = std::set<ProteinId>;

EssentialSet parse_essential_list(std::istream& in);
void write_essential_list(std::ostream& out, const EssentialSet& essential);

struct AnnotationStore {
  LocalizationMap localization;
  HomologyMap homology;
  EssentialSet essential;
};

// Shortest decimal form that parses back to the same double.
std::string format_exact(double value);

}  // namespace pinrefine
