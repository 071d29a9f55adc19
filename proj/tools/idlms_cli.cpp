// Command-line front end: runs paired Monte-Carlo comparisons of the IDLMS
// baseline against the reliability-weighted two-phase variant and exports
// CSV curves, per-node diagnostics and a reproducibility manifest.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idlms/artifacts.hpp"
#include "idlms/config.hpp"
#include "idlms/errors.hpp"
#include "idlms/experiment.hpp"
#include "idlms/metrics.hpp"

namespace {

// Every config key is exposed as one string-valued flag; values go through
// the same parser as config-file lines, so errors name the offending key.
struct FlagSet {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::vector<std::string> values;

  void add(CLI::App* cmd) {
    static const std::pair<const char*, const char*> kFlags[] = {
        {"n_nodes", "--n-nodes"},
        {"dim", "--dim"},
        {"mu_max", "--mu-max"},
        {"a", "--a"},
        {"ls", "--ls"},
        {"variance_low", "--variance-low"},
        {"variance_high", "--variance-high"},
        {"n_cycles", "--n-cycles,--cycles"},
        {"n_runs", "--n-runs,--runs"},
        {"master_seed", "--master-seed,--seed"},
        {"msd_mode", "--msd-mode"},
        {"msd_node", "--msd-node"},
        {"variance_normalization", "--variance-normalization"},
        {"tail_fraction", "--tail-fraction"},
        {"threshold_factor", "--threshold-factor"},
    };
    values.resize(std::size(kFlags));
    std::size_t i = 0;
    for (const auto& [key, names] : kFlags) {
      auto* opt = cmd->add_option(names, values[i], std::string("config key ") + key);
      options.emplace_back(key, opt);
      ++i;
    }
  }

  std::vector<idlms::KeyValue> overrides() const {
    std::vector<idlms::KeyValue> out;
    std::size_t i = 0;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) out.emplace_back(key, values[i]);
      ++i;
    }
    return out;
  }
};

void report_monte_carlo(const idlms::RunArtifacts& artifacts,
                        const std::filesystem::path& out_dir) {
  const double tail = artifacts.config.tail_fraction;
  const double base = idlms::steady_state_msd(artifacts.idlms_avg, tail);
  const double prop = idlms::steady_state_msd(artifacts.proposed_avg, tail);
  std::cout << "runs: " << artifacts.config.n_runs
            << "  cycles: " << artifacts.config.n_cycles
            << "  nodes: " << artifacts.config.n_nodes << '\n'
            << "steady-state MSD  idlms: " << idlms::to_decibels(base)
            << " dB  proposed: " << idlms::to_decibels(prop) << " dB\n"
            << "artifacts written to " << out_dir.string() << '\n';
}

int run_command(const std::optional<std::string>& config_path,
                const FlagSet& flags, const std::string& out_dir) {
  std::optional<std::filesystem::path> file;
  if (config_path) file = *config_path;
  const idlms::ExperimentConfig cfg = idlms::parse_config(file, flags.overrides());
  if (cfg.sweep_axis != idlms::SweepAxis::none)
    throw idlms::ConfigError("config sets sweep_axis; use the sweep subcommand");
  const idlms::RunArtifacts artifacts = idlms::run_monte_carlo(cfg);
  idlms::export_artifacts(artifacts, out_dir);
  report_monte_carlo(artifacts, out_dir);
  return 0;
}

int sweep_command(const std::optional<std::string>& config_path,
                  const FlagSet& flags, std::vector<idlms::KeyValue> sweep_overrides,
                  const std::string& out_dir) {
  std::optional<std::filesystem::path> file;
  if (config_path) file = *config_path;
  std::vector<idlms::KeyValue> overrides = flags.overrides();
  overrides.insert(overrides.end(), sweep_overrides.begin(), sweep_overrides.end());
  const idlms::ExperimentConfig cfg = idlms::parse_config(file, overrides);
  if (cfg.sweep_axis == idlms::SweepAxis::none)
    throw idlms::ConfigError("sweep requires --axis (or sweep_axis in the config)");
  const idlms::SweepArtifacts artifacts = idlms::run_sweep(cfg);
  idlms::export_sweep_artifacts(artifacts, out_dir);
  std::cout << "sweep over " << idlms::to_string(cfg.sweep_axis) << " ("
            << artifacts.points.size() << " points) written to " << out_dir
            << '\n';
  return 0;
}

int preset_command(const std::string& name, const FlagSet& flags,
                   const std::string& out_dir) {
  idlms::ExperimentConfig cfg = idlms::preset_config(name);
  for (const auto& [key, value] : flags.overrides())
    idlms::apply_override(cfg, key, value);
  idlms::validate_config(cfg);
  if (cfg.sweep_axis == idlms::SweepAxis::none) {
    const idlms::RunArtifacts artifacts = idlms::run_monte_carlo(cfg);
    idlms::export_artifacts(artifacts, out_dir);
    report_monte_carlo(artifacts, out_dir);
  } else {
    const idlms::SweepArtifacts artifacts = idlms::run_sweep(cfg);
    idlms::export_sweep_artifacts(artifacts, out_dir);
    std::cout << "preset " << name << " (sweep over "
              << idlms::to_string(cfg.sweep_axis) << ") written to " << out_dir
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Incremental distributed LMS simulator with reliability-weighted "
      "step sizes"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::string out_dir = "out";
  std::string preset_name;
  std::string sweep_axis;
  std::string sweep_values;

  auto* run = app.add_subcommand("run", "one Monte-Carlo comparison");
  run->add_option("--config", config_path, "config file (key = value lines)");
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  FlagSet run_flags;
  run_flags.add(run);

  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo comparison per axis value");
  sweep->add_option("--config", config_path, "config file (key = value lines)");
  sweep->add_option("--out", out_dir, "output directory")->capture_default_str();
  auto* axis_opt =
      sweep->add_option("--sweep-axis,--axis", sweep_axis, "ls | a | n_nodes");
  auto* values_opt = sweep->add_option("--sweep-values,--values", sweep_values,
                                       "comma-separated values");
  FlagSet sweep_flags;
  sweep_flags.add(sweep);

  auto* preset = app.add_subcommand("preset", "named experiment preset");
  preset->add_option("name", preset_name, "one of: fig2, fig3, fig4, fig5, fig6")
      ->required();
  preset->add_option("--out", out_dir, "output directory")->capture_default_str();
  FlagSet preset_flags;
  preset_flags.add(preset);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) return run_command(config_path, run_flags, out_dir);
    if (app.got_subcommand(sweep)) {
      std::vector<idlms::KeyValue> sweep_overrides;
      if (axis_opt->count() > 0) sweep_overrides.emplace_back("sweep_axis", sweep_axis);
      if (values_opt->count() > 0)
        sweep_overrides.emplace_back("sweep_values", sweep_values);
      return sweep_command(config_path, sweep_flags, std::move(sweep_overrides),
                           out_dir);
    }
    return preset_command(preset_name, preset_flags, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
