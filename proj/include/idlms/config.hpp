#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idlms/metrics.hpp"
#include "idlms/reliability.hpp"

namespace idlms {

enum class SweepAxis { none, ls, a, n_nodes };

// All run parameters. Field names double as config-file keys and CLI flag
// names; defaults are the reference experiment scale.
struct ExperimentConfig {
  int n_nodes = 30;
  int dim = 4;
  double mu_max = 0.01;
  double a = 10.0;
  int ls = 20;
  double variance_low = 1e-3;
  double variance_high = 1e-1;
  int n_cycles = 2000;
  int n_runs = 100;
  std::uint64_t master_seed = 42;
  MsdMode msd_mode = MsdMode::node_averaged;
  int msd_node = 0;
  VarianceNormalization variance_normalization = VarianceNormalization::normalized;
  double tail_fraction = 0.1;
  double threshold_factor = 2.0;
  SweepAxis sweep_axis = SweepAxis::none;
  std::vector<double> sweep_values;
};

using KeyValue = std::pair<std::string, std::string>;

// Sets one field from its textual form. Throws ConfigError naming the key on
// unknown keys or malformed values.
void apply_override(ExperimentConfig& cfg, std::string_view key,
                    std::string_view value);

// Plain-text `key = value` lines; '#' starts a comment line.
ExperimentConfig load_config_file(const std::filesystem::path& path);

// Cross-field invariants; error messages name the offending key(s).
void validate_config(const ExperimentConfig& cfg);

// Defaults, then file values, then explicit overrides; validated.
ExperimentConfig parse_config(const std::optional<std::filesystem::path>& file,
                              std::span<const KeyValue> overrides);

// Named experiment presets (fig2..fig6).
ExperimentConfig preset_config(std::string_view name);
std::vector<std::string> preset_names();

// `key = value` lines for every field, reload-able by load_config_file.
std::string serialize_config(const ExperimentConfig& cfg);

std::string to_string(MsdMode mode);
std::string to_string(VarianceNormalization normalization);
std::string to_string(SweepAxis axis);

ReliabilityConfig reliability_config(const ExperimentConfig& cfg);

}  // namespace idlms
