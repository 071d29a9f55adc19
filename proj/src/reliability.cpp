#include "idlms/reliability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "idlms/errors.hpp"
#include "idlms/numeric.hpp"

namespace idlms {

namespace {

void check_reliability(const ReliabilityConfig& cfg) {
  if (cfg.ls < 1) throw ConfigError("ls must be at least 1");
  if (!(cfg.mu_max > 0.0) || !std::isfinite(cfg.mu_max))
    throw ConfigError("mu_max must be positive and finite");
  if (!(cfg.a >= 0.0) || !std::isfinite(cfg.a))
    throw ConfigError("a must be non-negative and finite");
}

}  // namespace

Phase1Result run_phase1(const ModelParams& params, const SampleStream& stream,
                        const ReliabilityConfig& cfg) {
  check_reliability(cfg);
  if (stream.n_cycles() < cfg.ls)
    throw ConfigError("stream provides " + std::to_string(stream.n_cycles()) +
                      " cycles, phase 1 requires ls = " + std::to_string(cfg.ls));

  Phase1Result result;
  result.trajectory = run_idlms(params, stream, cfg.mu_max, cfg.ls);
  result.psi_ref = result.trajectory.network_estimate.back();

  result.buffers.reserve(stream.nodes.size());
  for (const auto& node : stream.nodes) {
    SampleBuffer buffer;
    buffer.regressors = node.regressors.topRows(cfg.ls);
    buffer.measurements = node.measurements.head(cfg.ls);
    result.buffers.push_back(std::move(buffer));
  }
  return result;
}

std::vector<double> compute_residuals(const SampleBuffer& buffer,
                                      const Eigen::VectorXd& psi_ref) {
  const int count = static_cast<int>(buffer.measurements.size());
  if (count == 0)
    throw std::invalid_argument("compute_residuals: empty sample buffer");
  const int m = static_cast<int>(buffer.regressors.cols());
  if (m != static_cast<int>(psi_ref.size()) ||
      static_cast<int>(buffer.regressors.rows()) != count)
    throw std::invalid_argument("compute_residuals: dimension mismatch");

  std::vector<double> residuals(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double* row = buffer.regressors.data() + static_cast<std::size_t>(i) * m;
    residuals[static_cast<std::size_t>(i)] =
        buffer.measurements[i] - dot_seq(row, psi_ref.data(), m);
  }
  return residuals;
}

NoiseStats estimate_noise_stats(std::span<const double> residuals,
                                VarianceNormalization normalization) {
  if (residuals.empty())
    throw std::invalid_argument("estimate_noise_stats: need at least one residual");

  const auto count = static_cast<double>(residuals.size());
  double sum = 0.0;
  for (double r : residuals) sum += r;
  const double mean = sum / count;

  double sum_sq = 0.0;
  for (double r : residuals) {
    const double centered = r - mean;
    sum_sq += centered * centered;
  }

  NoiseStats stats;
  stats.mean = mean;
  stats.variance =
      normalization == VarianceNormalization::normalized ? sum_sq / count : sum_sq;
  return stats;
}

double map_step_size(double sigma_tilde, const ReliabilityConfig& cfg) {
  check_reliability(cfg);
  if (!(sigma_tilde >= 0.0) || !std::isfinite(sigma_tilde))
    throw std::invalid_argument(
        "map_step_size: sigma_tilde must be non-negative and finite");
  return cfg.mu_max * std::exp(-cfg.a * sigma_tilde);
}

Trajectory run_phase2(const ModelParams& params, const SampleStream& stream,
                      const Eigen::VectorXd& psi_start,
                      const StepSizeProfile& profile, int first_cycle,
                      int n_cycles) {
  return run_profiled(params, stream, profile, psi_start, first_cycle, n_cycles);
}

ProposedResult run_proposed(const ModelParams& params, const SampleStream& stream,
                            const ReliabilityConfig& cfg, int n_cycles) {
  check_reliability(cfg);
  if (n_cycles <= cfg.ls)
    throw ConfigError("n_cycles (" + std::to_string(n_cycles) +
                      ") must exceed ls (" + std::to_string(cfg.ls) + ")");

  Phase1Result phase1 = run_phase1(params, stream, cfg);

  ProposedResult result;
  result.profile.mu.reserve(static_cast<std::size_t>(params.n_nodes));
  result.diagnostics.reserve(static_cast<std::size_t>(params.n_nodes));
  for (int k = 0; k < params.n_nodes; ++k) {
    const auto residuals =
        compute_residuals(phase1.buffers[static_cast<std::size_t>(k)], phase1.psi_ref);
    const NoiseStats stats = estimate_noise_stats(residuals, cfg.normalization);
    const double mu = map_step_size(stats.variance, cfg);
    result.profile.mu.push_back(mu);
    result.diagnostics.push_back(NodeDiagnostic{
        k, params.node_variances[static_cast<std::size_t>(k)], stats.variance, mu});
  }

  Trajectory phase2 = run_phase2(params, stream, phase1.psi_ref, result.profile,
                                 cfg.ls, n_cycles);

  // Stitch the two phases into one trajectory spanning all cycles.
  Trajectory& combined = result.trajectory;
  combined.network_estimate = std::move(phase1.trajectory.network_estimate);
  combined.network_estimate.insert(
      combined.network_estimate.end(),
      std::make_move_iterator(phase2.network_estimate.begin()),
      std::make_move_iterator(phase2.network_estimate.end()));
  combined.node_sq_dev.resize(n_cycles, params.n_nodes);
  combined.node_sq_dev.topRows(cfg.ls) = phase1.trajectory.node_sq_dev;
  combined.node_sq_dev.bottomRows(n_cycles - cfg.ls) = phase2.node_sq_dev;
  return result;
}

}  // namespace idlms
