#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "idlms/datagen.hpp"
#include "idlms/incremental.hpp"

namespace idlms {

// How the residual spread is turned into a variance estimate. `normalized`
// divides the centered sum of squares by the residual count and is the
// default; `literal` keeps the raw sum, which grows linearly with ls and
// collapses every step size toward zero for long phase-1 windows. The
// literal form is kept behind this switch for fidelity experiments.
enum class VarianceNormalization { normalized, literal };

struct ReliabilityConfig {
  int ls = 20;           // phase-1 cycle count
  double a = 10.0;       // exponent gain of the step-size map
  double mu_max = 0.01;  // global step size; also the phase-1 step
  VarianceNormalization normalization = VarianceNormalization::normalized;
};

// Raw samples one node buffers during phase 1 (ls rows).
struct SampleBuffer {
  RowMajorMatrix regressors;
  Eigen::VectorXd measurements;
};

struct Phase1Result {
  Trajectory trajectory;              // cycles 0..ls-1, run at mu_max
  Eigen::VectorXd psi_ref;            // estimate after the final node of cycle ls
  std::vector<SampleBuffer> buffers;  // per node, ls samples each
};

struct NoiseStats {
  double mean = 0.0;      // g_k, arithmetic mean of the residuals
  double variance = 0.0;  // sigma_tilde_k
};

struct NodeDiagnostic {
  int node_id = 0;
  double sigma2_true = 0.0;
  double sigma2_est = 0.0;
  double mu = 0.0;
};

struct ProposedResult {
  Trajectory trajectory;  // all n_cycles; phase transition after cycle ls
  std::vector<NodeDiagnostic> diagnostics;
  StepSizeProfile profile;
};

// Phase 1: ls baseline cycles at mu_max while every node buffers its raw
// samples. The returned psi_ref is the estimate the final node holds after
// cycle ls; residuals are taken against it, not against stale mid-run
// estimates.
Phase1Result run_phase1(const ModelParams& params, const SampleStream& stream,
                        const ReliabilityConfig& cfg);

// Residuals d - u psi_ref over the buffered samples.
std::vector<double> compute_residuals(const SampleBuffer& buffer,
                                      const Eigen::VectorXd& psi_ref);

NoiseStats estimate_noise_stats(std::span<const double> residuals,
                                VarianceNormalization normalization);

// mu = mu_max * exp(-a * sigma_tilde); strictly decreasing in sigma_tilde,
// range (0, mu_max].
double map_step_size(double sigma_tilde, const ReliabilityConfig& cfg);

// Phase 2: the incremental engine with per-node step sizes, continuing the
// stream at first_cycle from psi_start.
Trajectory run_phase2(const ModelParams& params, const SampleStream& stream,
                      const Eigen::VectorXd& psi_start,
                      const StepSizeProfile& profile, int first_cycle,
                      int n_cycles);

// The full two-phase algorithm. The returned trajectory spans all n_cycles;
// its first ls cycles are exactly the baseline's.
ProposedResult run_proposed(const ModelParams& params,
                            const SampleStream& stream,
                            const ReliabilityConfig& cfg, int n_cycles);

}  // namespace idlms
