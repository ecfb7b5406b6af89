#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pinrefine/pipeline.hpp"

namespace pinrefine {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used == value.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': '" + value + "' is not a finite number");
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(value, &used);
    if (used == value.size() && n >= 0) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': '" + value + "' is not a nonnegative integer");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_count(key, item));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

}  // namespace

void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value,
                        const std::filesystem::path& base_dir) {
  if (key == "edges") {
    cfg.edges = resolve(base_dir, value);
  } else if (key == "expression") {
    cfg.expression = resolve(base_dir, value);
  } else if (key == "localization") {
    cfg.localization = resolve(base_dir, value);
  } else if (key == "homology") {
    cfg.homology = resolve(base_dir, value);
  } else if (key == "essential") {
    cfg.essential = resolve(base_dir, value);
  } else if (key == "out") {
    cfg.out_dir = resolve(base_dir, value);
  } else if (key == "time_points") {
    cfg.time_points = parse_count(key, value);
  } else if (key == "th1") {
    cfg.thresholds.conservatism = parse_double(key, value);
  } else if (key == "th2") {
    cfg.thresholds.subcellular = parse_double(key, value);
  } else if (key == "th3") {
    cfg.thresholds.topology = parse_double(key, value);
  } else if (key == "compartments") {
    cfg.compartments = split_list(value);
  } else if (key == "dmnc_epsilon") {
    cfg.centrality.dmnc_epsilon = parse_double(key, value);
  } else if (key == "tp_sigma") {
    cfg.centrality.tp_sigma = parse_double(key, value);
  } else if (key == "damping") {
    cfg.centrality.damping = parse_double(key, value);
  } else if (key == "tolerance") {
    cfg.centrality.tolerance = parse_double(key, value);
  } else if (key == "max_iterations") {
    cfg.centrality.max_iterations = parse_count(key, value);
  } else if (key == "threads") {
    cfg.centrality.threads = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "topk") {
    cfg.topk = parse_count_list(key, value);
  } else if (key == "sweep_topk") {
    cfg.sweep_topk = parse_count_list(key, value);
  } else if (key == "sweep_method") {
    const auto method = parse_method(value);
    if (!method) throw ConfigError("config key 'sweep_method': unknown centrality method '" + value + "'");
    cfg.sweep_method = *method;
  } else if (key == "reference") {
    cfg.reference = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  PipelineConfig cfg;
  const auto base = path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base);
  }
  return cfg;
}

void validate_config(const PipelineConfig& cfg) {
  const std::pair<const char*, const std::filesystem::path*> paths[] = {
      {"edges", &cfg.edges},       {"expression", &cfg.expression}, {"localization", &cfg.localization},
      {"homology", &cfg.homology}, {"essential", &cfg.essential},
  };
  for (const auto& [name, p] : paths) {
    if (p->empty()) throw ConfigError(std::string("missing input path '") + name + "'");
  }
  if (cfg.time_points < 1) throw ConfigError("time_points must be at least 1");
  if (cfg.topk.empty()) throw ConfigError("topk list is empty");
  if (!std::is_sorted(cfg.topk.begin(), cfg.topk.end())) throw ConfigError("topk list must be sorted ascending");
  if (!std::is_sorted(cfg.sweep_topk.begin(), cfg.sweep_topk.end())) {
    throw ConfigError("sweep_topk list must be sorted ascending");
  }
  if (std::find(cfg.topk.begin(), cfg.topk.end(), 0) != cfg.topk.end()) throw ConfigError("topk values must be positive");
  if (cfg.compartments.empty()) throw ConfigError("compartment vocabulary is empty");
  if (!(cfg.centrality.damping > 0.0 && cfg.centrality.damping < 1.0)) throw ConfigError("damping must be in (0, 1)");
  if (!(cfg.centrality.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(cfg.centrality.tp_sigma > 0.0)) throw ConfigError("tp_sigma must be positive");
  if (!(cfg.centrality.dmnc_epsilon > 0.0)) throw ConfigError("dmnc_epsilon must be positive");
  if (cfg.centrality.max_iterations == 0) throw ConfigError("max_iterations must be positive");
  if (!cfg.reference.empty() && cfg.reference != "dip" && cfg.reference != "biogrid") {
    throw ConfigError("reference must be 'dip', 'biogrid' or empty");
  }
  if (cfg.out_dir.empty()) throw ConfigError("output directory is empty");
}

}  // namespace pinrefine
