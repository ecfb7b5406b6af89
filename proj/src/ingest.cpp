#include "pinrefine/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

namespace pinrefine {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Blank or comment line.
bool skippable(std::string_view line) {
  const auto first = std::find_if_not(line.begin(), line.end(), is_blank);
  return first == line.end() || *first == '#';
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

// Splits "id<ws>rest" where rest may itself contain spaces.
std::pair<std::string_view, std::string_view> split_id_rest(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_blank(line[i])) ++i;
  const std::size_t start = i;
  while (i < line.size() && !is_blank(line[i])) ++i;
  return {line.substr(start, i - start), line.substr(i)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_finite(std::string_view text) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

ProteinId make_id(std::size_t line_no, std::string_view text) {
  if (!ProteinId::is_valid(text)) {
    throw ParseError(line_no, "invalid protein id '" + std::string(text) + "'");
  }
  return ProteinId(std::string(text));
}

// Calls fn(line_no, line) for every non-skippable line.
template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;
    fn(line_no, line);
  }
}

}  // namespace

EdgeList normalize_edges(std::vector<ProteinPair> raw, EdgeParseStats* stats) {
  EdgeParseStats local;
  local.data_rows = raw.size();
  EdgeList out;
  out.pairs.reserve(raw.size());
  for (auto& [a, b] : raw) {
    if (a == b) {
      ++local.self_loops_dropped;
      continue;
    }
    if (b < a) std::swap(a, b);
    out.pairs.emplace_back(std::move(a), std::move(b));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  const auto last = std::unique(out.pairs.begin(), out.pairs.end());
  local.duplicates_dropped = static_cast<std::size_t>(out.pairs.end() - last);
  out.pairs.erase(last, out.pairs.end());
  local.kept = out.pairs.size();
  if (stats != nullptr) *stats = local;
  return out;
}

ParsedEdges parse_edge_list(std::istream& in) {
  std::vector<ProteinPair> raw;
  for_each_data_line(in, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_whitespace(line);
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 2 columns, found " + std::to_string(fields.size()));
    }
    raw.emplace_back(make_id(line_no, fields[0]), make_id(line_no, fields[1]));
  });
  ParsedEdges result;
  result.edges = normalize_edges(std::move(raw), &result.stats);
  return result;
}

void write_edge_list(std::ostream& out, const EdgeList& edges) {
  for (const auto& [a, b] : edges.pairs) {
    out << a.str() << '\t' << b.str() << '\n';
  }
}

const std::vector<double>* ExpressionTable::find(const ProteinId& id) const {
  const auto it = profiles.find(id);
  return it == profiles.end() ? nullptr : &it->second;
}

ParsedExpression parse_expression(std::istream& in, std::size_t time_points) {
  if (time_points == 0) throw Error("expression time point count must be positive");
  ParsedExpression result;
  result.table.time_points = time_points;
  for_each_data_line(in, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_whitespace(line);
    if (fields.size() != time_points + 1) {
      throw ParseError(line_no, "expected id plus " + std::to_string(time_points) + " values, found " +
                                    std::to_string(fields.size() - 1));
    }
    ProteinId id = make_id(line_no, fields[0]);
    std::vector<double> values;
    values.reserve(time_points);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto value = parse_finite(fields[k]);
      if (!value) throw ParseError(line_no, "non-numeric expression value '" + std::string(fields[k]) + "'");
      values.push_back(*value);
    }
    auto [it, inserted] = result.table.profiles.insert_or_assign(std::move(id), std::move(values));
    if (!inserted) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": duplicate expression row for '" +
                                it->first.str() + "', keeping the last one");
    }
  });
  return result;
}

void write_expression(std::ostream& out, const ExpressionTable& table) {
  for (const auto& [id, values] : table.profiles) {
    out << id.str();
    for (double v : values) out << '\t' << format_exact(v);
    out << '\n';
  }
}

const std::vector<std::string>& default_compartments() {
  static const std::vector<std::string> names = {
      "cytoskeleton", "golgiapparatus", "cytosol",   "endosome",
      "mitochondrion", "plasma membrane", "nucleus", "extracellular space",
      "vacuole",       "endoplasmic reticulum", "peroxisome",
  };
  return names;
}

LocalizationMap parse_localization(std::istream& in, const std::vector<std::string>& vocabulary) {
  LocalizationMap loc;
  for_each_data_line(in, [&](std::size_t line_no, std::string_view line) {
    const auto [id_text, rest] = split_id_rest(line);
    const std::string compartment(trim(rest));
    if (compartment.empty()) throw ParseError(line_no, "missing compartment column");
    ProteinId id = make_id(line_no, id_text);
    if (std::find(vocabulary.begin(), vocabulary.end(), compartment) == vocabulary.end()) {
      throw ParseError(line_no, "unknown compartment '" + compartment + "'");
    }
    loc[std::move(id)].insert(compartment);
  });
  return loc;
}

void write_localization(std::ostream& out, const LocalizationMap& loc) {
  for (const auto& [id, compartments] : loc) {
    for (const auto& c : compartments) out << id.str() << '\t' << c << '\n';
  }
}

HomologyMap parse_homology(std::istream& in) {
  HomologyMap homology;
  for_each_data_line(in, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_whitespace(line);
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 2 columns, found " + std::to_string(fields.size()));
    }
    const auto score = parse_finite(fields[1]);
    if (!score || *score < 0.0) {
      throw ParseError(line_no, "homology score must be a finite value >= 0, got '" + std::string(fields[1]) + "'");
    }
    homology.insert_or_assign(make_id(line_no, fields[0]), *score);
  });
  return homology;
}

void write_homology(std::ostream& out, const HomologyMap& homology) {
  for (const auto& [id, score] : homology) out << id.str() << '\t' << format_exact(score) << '\n';
}

double homology_score(const HomologyMap& homology, const ProteinId& id) {
  const auto it = homology.find(id);
  return it == homology.end() ? 0.0 : it->second;
}

EssentialSet parse_essential_list(std::istream& in) {
  EssentialSet essential;
  for_each_data_line(in, [&](std::size_t line_no, std::string_view line) {
    // Only the first column is an id; trailing annotation columns are ignored.
    essential.insert(make_id(line_no, split_whitespace(line).front()));
  });
  return essential;
}

void write_essential_list(std::ostream& out, const EssentialSet& essential) {
  for (const auto& id : essential) out << id.str() << '\n';
}

std::string format_exact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace pinrefine
