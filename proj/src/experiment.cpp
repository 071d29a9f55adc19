#include "idlms/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "idlms/errors.hpp"
#include "idlms/incremental.hpp"
#include "idlms/numeric.hpp"

namespace idlms {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ExperimentConfig point_config(const ExperimentConfig& cfg, double value) {
  ExperimentConfig point = cfg;
  point.sweep_axis = SweepAxis::none;
  point.sweep_values.clear();
  switch (cfg.sweep_axis) {
    case SweepAxis::ls: point.ls = static_cast<int>(value); break;
    case SweepAxis::a: point.a = value; break;
    case SweepAxis::n_nodes: point.n_nodes = static_cast<int>(value); break;
    case SweepAxis::none:
      throw ConfigError("run_sweep requires sweep_axis to be set");
  }
  validate_config(point);
  return point;
}

// true when every adjacent pair is ordered by cmp (<= / >=), values ascending.
template <typename Get, typename Cmp>
bool adjacent_ordered(const std::vector<SweepSummaryRow>& rows, Get get, Cmp cmp) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!cmp(get(rows[i - 1]), get(rows[i]))) return false;
  return true;
}

}  // namespace

ModelParams make_model_params(const ExperimentConfig& cfg,
                              std::vector<double> node_variances) {
  ModelParams params;
  params.n_nodes = cfg.n_nodes;
  params.dim = cfg.dim;
  params.w_o = Eigen::VectorXd::Constant(cfg.dim,
                                         1.0 / std::sqrt(static_cast<double>(cfg.dim)));
  params.node_variances = std::move(node_variances);
  params.regressor_covariance = Eigen::MatrixXd::Identity(cfg.dim, cfg.dim);
  return params;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int run_index) {
  validate_config(cfg);
  if (run_index < 0)
    throw std::invalid_argument("run_experiment: run_index must be non-negative");

  ExperimentResult result;
  result.run_seed = derive_run_seed(cfg.master_seed,
                                    static_cast<std::uint64_t>(run_index));
  Rng rng(result.run_seed);

  auto variances =
      assign_node_variances(cfg.n_nodes, cfg.variance_low, cfg.variance_high, rng);
  const ModelParams params = make_model_params(cfg, std::move(variances));
  const SampleStream stream = generate_stream(params, cfg.n_cycles, rng);
  result.stream_checksum = stream_checksum(stream);

  const Trajectory baseline = run_idlms(params, stream, cfg.mu_max, cfg.n_cycles);
  ProposedResult proposed =
      run_proposed(params, stream, reliability_config(cfg), cfg.n_cycles);

  result.idlms = deviation_curve(baseline, cfg.msd_mode, cfg.msd_node);
  result.proposed = deviation_curve(proposed.trajectory, cfg.msd_mode, cfg.msd_node);
  result.diagnostics = std::move(proposed.diagnostics);
  return result;
}

RunArtifacts run_monte_carlo(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.sweep_axis != SweepAxis::none)
    throw ConfigError("sweep_axis is set; use run_sweep for sweep configs");

  const auto start = Clock::now();
  RunArtifacts artifacts;
  artifacts.config = cfg;
  artifacts.run_seeds.reserve(static_cast<std::size_t>(cfg.n_runs));
  artifacts.stream_checksums.reserve(static_cast<std::size_t>(cfg.n_runs));

  std::vector<MsdCurve> idlms_curves;
  std::vector<MsdCurve> proposed_curves;
  idlms_curves.reserve(static_cast<std::size_t>(cfg.n_runs));
  proposed_curves.reserve(static_cast<std::size_t>(cfg.n_runs));

  for (int run = 0; run < cfg.n_runs; ++run) {
    ExperimentResult result;
    try {
      result = run_experiment(cfg, run);
    } catch (const std::exception& e) {
      throw std::runtime_error("run " + std::to_string(run) +
                               " failed: " + e.what());
    }
    if (run == 0) artifacts.diagnostics = std::move(result.diagnostics);
    artifacts.run_seeds.push_back(result.run_seed);
    artifacts.stream_checksums.push_back(result.stream_checksum);
    idlms_curves.push_back(std::move(result.idlms));
    proposed_curves.push_back(std::move(result.proposed));
  }

  artifacts.idlms_avg = average_curves(idlms_curves);
  artifacts.proposed_avg = average_curves(proposed_curves);
  artifacts.wall_seconds = seconds_since(start);
  return artifacts;
}

SweepArtifacts run_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.sweep_axis == SweepAxis::none)
    throw ConfigError("run_sweep requires sweep_axis to be set");

  const auto start = Clock::now();
  SweepArtifacts artifacts;
  artifacts.config = cfg;
  artifacts.points.reserve(cfg.sweep_values.size());

  for (double value : cfg.sweep_values) {
    const ExperimentConfig point = point_config(cfg, value);
    artifacts.points.push_back(run_monte_carlo(point));
  }

  // Summary rows: steady state, final value and convergence time per
  // algorithm, in the input order of sweep values.
  for (std::size_t p = 0; p < artifacts.points.size(); ++p) {
    const double value = cfg.sweep_values[p];
    const RunArtifacts& run = artifacts.points[p];
    const std::pair<const char*, const MsdCurve*> curves[] = {
        {"idlms", &run.idlms_avg}, {"proposed", &run.proposed_avg}};
    for (const auto& [name, curve] : curves) {
      SweepSummaryRow row;
      row.sweep_value = value;
      row.algorithm = name;
      row.steady_state = steady_state_msd(*curve, cfg.tail_fraction);
      row.final_msd = curve->values.back();
      row.convergence_cycles =
          convergence_time(*curve, cfg.threshold_factor, cfg.tail_fraction);
      if (row.convergence_cycles)
        row.convergence_node_updates =
            static_cast<long long>(*row.convergence_cycles) *
            run.config.n_nodes;
      artifacts.summary.push_back(std::move(row));
    }
  }

  // Ordinal checks over the proposed rows, ascending sweep value.
  std::vector<SweepSummaryRow> proposed_rows;
  for (const auto& row : artifacts.summary)
    if (row.algorithm == "proposed") proposed_rows.push_back(row);
  std::stable_sort(proposed_rows.begin(), proposed_rows.end(),
                   [](const auto& a, const auto& b) {
                     return a.sweep_value < b.sweep_value;
                   });
  if (proposed_rows.size() >= 2) {
    artifacts.checks.computed = true;
    artifacts.checks.steady_state_non_increasing = adjacent_ordered(
        proposed_rows, [](const auto& r) { return r.steady_state; },
        [](double a, double b) { return a >= b; });
    artifacts.checks.final_msd_non_increasing = adjacent_ordered(
        proposed_rows, [](const auto& r) { return r.final_msd; },
        [](double a, double b) { return a >= b; });
    artifacts.checks.convergence_all_reached =
        std::all_of(proposed_rows.begin(), proposed_rows.end(),
                    [](const auto& r) { return r.convergence_cycles.has_value(); });
    artifacts.checks.convergence_cycles_non_decreasing =
        artifacts.checks.convergence_all_reached &&
        adjacent_ordered(
            proposed_rows,
            [](const auto& r) { return *r.convergence_cycles; },
            [](int a, int b) { return a <= b; });
  }

  artifacts.wall_seconds = seconds_since(start);
  return artifacts;
}

}  // namespace idlms
