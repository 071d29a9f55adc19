#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idlms/config.hpp"
#include "idlms/datagen.hpp"
#include "idlms/metrics.hpp"
#include "idlms/reliability.hpp"

namespace idlms {

// Outcome of one paired run: both algorithms consume the identical stream
// and variance assignment, so the curve gap is not inflated by independent
// sampling noise.
struct ExperimentResult {
  MsdCurve idlms;
  MsdCurve proposed;
  std::vector<NodeDiagnostic> diagnostics;
  std::uint64_t run_seed = 0;
  std::uint64_t stream_checksum = 0;
};

struct RunArtifacts {
  ExperimentConfig config;
  MsdCurve idlms_avg;
  MsdCurve proposed_avg;
  std::vector<NodeDiagnostic> diagnostics;  // realization of run index 0
  std::vector<std::uint64_t> run_seeds;
  std::vector<std::uint64_t> stream_checksums;
  double wall_seconds = 0.0;
};

struct SweepSummaryRow {
  double sweep_value = 0.0;
  std::string algorithm;
  double steady_state = 0.0;
  double final_msd = 0.0;
  std::optional<int> convergence_cycles;
  std::optional<long long> convergence_node_updates;
};

// Ordinal checks over the proposed algorithm's rows, taken in ascending
// sweep value. Computed and reported, never silently assumed.
struct SweepChecks {
  bool computed = false;
  bool steady_state_non_increasing = false;
  bool final_msd_non_increasing = false;
  bool convergence_all_reached = false;
  bool convergence_cycles_non_decreasing = false;
};

struct SweepArtifacts {
  ExperimentConfig config;
  std::vector<RunArtifacts> points;      // one per sweep value, input order
  std::vector<SweepSummaryRow> summary;  // two rows per sweep value
  SweepChecks checks;
  double wall_seconds = 0.0;
};

// Ground truth used by the harness: w_o = ones/sqrt(dim) (unit norm, so the
// initial MSD is 0 dB) and identity regressor covariance.
ModelParams make_model_params(const ExperimentConfig& cfg,
                              std::vector<double> node_variances);

ExperimentResult run_experiment(const ExperimentConfig& cfg, int run_index);

RunArtifacts run_monte_carlo(const ExperimentConfig& cfg);

SweepArtifacts run_sweep(const ExperimentConfig& cfg);

}  // namespace idlms
