#include "idlms/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "idlms/errors.hpp"
#include "idlms/numeric.hpp"

namespace idlms {

namespace {

std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// Canonical key/enum spelling uses underscores; hyphens are accepted so CLI
// flag spellings can be pasted into config files.
std::string canonical(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw ConfigError(std::string(key) + ": expected " + std::string(expected) +
                    ", got '" + std::string(value) + "'");
}

int parse_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) bad_value(key, value, "an integer");
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    bad_value(key, value, "an unsigned 64-bit integer");
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) bad_value(key, value, "a number");
  return out;
}

MsdMode parse_msd_mode(std::string_view key, std::string_view value) {
  const std::string v = canonical(value);
  if (v == "node_averaged") return MsdMode::node_averaged;
  if (v == "single_node") return MsdMode::single_node;
  bad_value(key, value, "'node_averaged' or 'single_node'");
}

VarianceNormalization parse_normalization(std::string_view key,
                                          std::string_view value) {
  const std::string v = canonical(value);
  if (v == "normalized") return VarianceNormalization::normalized;
  if (v == "literal") return VarianceNormalization::literal;
  bad_value(key, value, "'normalized' or 'literal'");
}

SweepAxis parse_axis(std::string_view key, std::string_view value) {
  const std::string v = canonical(value);
  if (v == "none") return SweepAxis::none;
  if (v == "ls") return SweepAxis::ls;
  if (v == "a") return SweepAxis::a;
  if (v == "n_nodes") return SweepAxis::n_nodes;
  bad_value(key, value, "'none', 'ls', 'a' or 'n_nodes'");
}

std::vector<double> parse_value_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  std::string_view rest = trim(value);
  if (rest.empty()) return out;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) bad_value(key, value, "a comma-separated list of numbers");
    out.push_back(parse_double(key, item));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

}  // namespace

void apply_override(ExperimentConfig& cfg, std::string_view raw_key,
                    std::string_view value) {
  const std::string key = canonical(trim(raw_key));
  const std::string_view val = trim(value);

  if (key == "n_nodes") cfg.n_nodes = parse_int(key, val);
  else if (key == "dim") cfg.dim = parse_int(key, val);
  else if (key == "mu_max") cfg.mu_max = parse_double(key, val);
  else if (key == "a") cfg.a = parse_double(key, val);
  else if (key == "ls") cfg.ls = parse_int(key, val);
  else if (key == "variance_low") cfg.variance_low = parse_double(key, val);
  else if (key == "variance_high") cfg.variance_high = parse_double(key, val);
  else if (key == "n_cycles") cfg.n_cycles = parse_int(key, val);
  else if (key == "n_runs") cfg.n_runs = parse_int(key, val);
  else if (key == "master_seed") cfg.master_seed = parse_u64(key, val);
  else if (key == "msd_mode") cfg.msd_mode = parse_msd_mode(key, val);
  else if (key == "msd_node") cfg.msd_node = parse_int(key, val);
  else if (key == "variance_normalization")
    cfg.variance_normalization = parse_normalization(key, val);
  else if (key == "tail_fraction") cfg.tail_fraction = parse_double(key, val);
  else if (key == "threshold_factor") cfg.threshold_factor = parse_double(key, val);
  else if (key == "sweep_axis") cfg.sweep_axis = parse_axis(key, val);
  else if (key == "sweep_values") cfg.sweep_values = parse_value_list(key, val);
  else
    throw ConfigError("unknown configuration key '" + key + "'");
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());

  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    apply_override(cfg, stripped.substr(0, eq), stripped.substr(eq + 1));
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n_nodes < 1) throw ConfigError("n_nodes must be at least 1");
  if (cfg.dim < 1) throw ConfigError("dim must be at least 1");
  if (!(cfg.mu_max > 0.0) || !std::isfinite(cfg.mu_max))
    throw ConfigError("mu_max must be positive and finite");
  if (!(cfg.a >= 0.0) || !std::isfinite(cfg.a))
    throw ConfigError("a must be non-negative and finite");
  if (cfg.ls < 1) throw ConfigError("ls must be at least 1");
  if (!(cfg.variance_low > 0.0) || !std::isfinite(cfg.variance_low))
    throw ConfigError("variance_low must be positive and finite");
  if (!(cfg.variance_high >= cfg.variance_low) || !std::isfinite(cfg.variance_high))
    throw ConfigError("variance_high (" + format_double(cfg.variance_high) +
                      ") must be at least variance_low (" +
                      format_double(cfg.variance_low) + ")");
  if (cfg.n_cycles <= cfg.ls)
    throw ConfigError("ls (" + std::to_string(cfg.ls) +
                      ") must be less than n_cycles (" +
                      std::to_string(cfg.n_cycles) + ")");
  if (cfg.n_runs < 1) throw ConfigError("n_runs must be at least 1");
  if (cfg.msd_mode == MsdMode::single_node &&
      (cfg.msd_node < 0 || cfg.msd_node >= cfg.n_nodes))
    throw ConfigError("msd_node (" + std::to_string(cfg.msd_node) +
                      ") must lie in 0..n_nodes-1 (n_nodes = " +
                      std::to_string(cfg.n_nodes) + ")");
  if (!(cfg.tail_fraction > 0.0) || !(cfg.tail_fraction <= 1.0))
    throw ConfigError("tail_fraction must be in (0, 1]");
  if (!(cfg.threshold_factor > 1.0) || !std::isfinite(cfg.threshold_factor))
    throw ConfigError("threshold_factor must exceed 1");

  if (cfg.sweep_axis == SweepAxis::none) {
    if (!cfg.sweep_values.empty())
      throw ConfigError("sweep_values given but sweep_axis is 'none'");
    return;
  }
  if (cfg.sweep_values.empty())
    throw ConfigError("sweep_axis is set but sweep_values is empty");
  for (double v : cfg.sweep_values) {
    if (!std::isfinite(v)) throw ConfigError("sweep_values must be finite");
    if (cfg.sweep_axis == SweepAxis::a) {
      if (v < 0.0) throw ConfigError("sweep_values for axis 'a' must be >= 0");
    } else {
      if (v < 1.0 || v != std::floor(v))
        throw ConfigError("sweep_values for axis '" + to_string(cfg.sweep_axis) +
                          "' must be positive integers");
    }
  }
}

ExperimentConfig parse_config(const std::optional<std::filesystem::path>& file,
                              std::span<const KeyValue> overrides) {
  ExperimentConfig cfg = file ? load_config_file(*file) : ExperimentConfig{};
  for (const auto& [key, value] : overrides) apply_override(cfg, key, value);
  validate_config(cfg);
  return cfg;
}

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig cfg;  // defaults are the reference comparison (fig2)
  if (name == "fig2") return cfg;
  if (name == "fig3") {
    cfg.n_runs = 1;  // per-sensor diagnostics of a single realization
    return cfg;
  }
  if (name == "fig4") {
    cfg.sweep_axis = SweepAxis::ls;
    cfg.sweep_values = {5, 10, 20, 50};
    return cfg;
  }
  if (name == "fig5") {
    cfg.sweep_axis = SweepAxis::a;
    cfg.sweep_values = {0, 5, 10, 20};
    return cfg;
  }
  if (name == "fig6") {
    cfg.sweep_axis = SweepAxis::n_nodes;
    cfg.sweep_values = {10, 20, 30, 40};
    return cfg;
  }
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + std::string(name) + "' (available: " +
                    names + ")");
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6"};
}

std::string to_string(MsdMode mode) {
  return mode == MsdMode::node_averaged ? "node_averaged" : "single_node";
}

std::string to_string(VarianceNormalization normalization) {
  return normalization == VarianceNormalization::normalized ? "normalized"
                                                            : "literal";
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::none: return "none";
    case SweepAxis::ls: return "ls";
    case SweepAxis::a: return "a";
    case SweepAxis::n_nodes: return "n_nodes";
  }
  return "none";
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "n_nodes = " << cfg.n_nodes << '\n'
      << "dim = " << cfg.dim << '\n'
      << "mu_max = " << format_double(cfg.mu_max) << '\n'
      << "a = " << format_double(cfg.a) << '\n'
      << "ls = " << cfg.ls << '\n'
      << "variance_low = " << format_double(cfg.variance_low) << '\n'
      << "variance_high = " << format_double(cfg.variance_high) << '\n'
      << "n_cycles = " << cfg.n_cycles << '\n'
      << "n_runs = " << cfg.n_runs << '\n'
      << "master_seed = " << cfg.master_seed << '\n'
      << "msd_mode = " << to_string(cfg.msd_mode) << '\n'
      << "msd_node = " << cfg.msd_node << '\n'
      << "variance_normalization = " << to_string(cfg.variance_normalization)
      << '\n'
      << "tail_fraction = " << format_double(cfg.tail_fraction) << '\n'
      << "threshold_factor = " << format_double(cfg.threshold_factor) << '\n'
      << "sweep_axis = " << to_string(cfg.sweep_axis) << '\n';
  out << "sweep_values =";
  for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i)
    out << (i == 0 ? " " : ",") << format_double(cfg.sweep_values[i]);
  out << '\n';
  return out.str();
}

ReliabilityConfig reliability_config(const ExperimentConfig& cfg) {
  ReliabilityConfig rc;
  rc.ls = cfg.ls;
  rc.a = cfg.a;
  rc.mu_max = cfg.mu_max;
  rc.normalization = cfg.variance_normalization;
  return rc;
}

}  // namespace idlms
