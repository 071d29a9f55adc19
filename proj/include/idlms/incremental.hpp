#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "idlms/datagen.hpp"

namespace idlms {

// Per-node adaptation gains, indexed by node id (= ring position).
struct StepSizeProfile {
  std::vector<double> mu;

  static StepSizeProfile uniform(int n_nodes, double mu);
  int n_nodes() const { return static_cast<int>(mu.size()); }
};

// One node's sample for a single cycle, in ring order.
struct CycleSample {
  Eigen::RowVectorXd u;
  double d = 0.0;
};

// Per-cycle record of a run. node_sq_dev(i, k) is ||w_o - psi||^2 of the
// local estimate node k holds immediately before its update in cycle i (its
// pre-update estimate, the quantity the MSD criterion averages).
struct Trajectory {
  std::vector<Eigen::VectorXd> network_estimate;  // cycle-final estimate w_i
  Eigen::MatrixXd node_sq_dev;                    // n_cycles x n_nodes

  int n_cycles() const { return static_cast<int>(network_estimate.size()); }
  int n_nodes() const { return static_cast<int>(node_sq_dev.cols()); }
};

// One LMS step: psi + mu * u^T (d - u psi), steepest descent on the
// instantaneous squared error |d - u psi|^2. The error accumulates the inner
// product left to right and the correction is applied coordinate by
// coordinate, so a straight-line reference with the same ordering matches
// bit for bit.
Eigen::VectorXd lms_node_update(const Eigen::VectorXd& psi,
                                Eigen::Ref<const Eigen::RowVectorXd> u,
                                double d, double mu);

// One full ring sweep: node updates in ascending node id, seeded with w_prev,
// returning the final node's estimate.
Eigen::VectorXd run_cycle(const Eigen::VectorXd& w_prev,
                          std::span<const CycleSample> samples,
                          const StepSizeProfile& profile);

// General engine: executes cycles [first_cycle, n_cycles) of the stream,
// starting from psi_start, with per-node step sizes. The baseline and the
// reliability-weighted phase 2 are both thin wrappers over this loop.
Trajectory run_profiled(const ModelParams& params, const SampleStream& stream,
                        const StepSizeProfile& profile,
                        const Eigen::VectorXd& psi_start, int first_cycle,
                        int n_cycles);

// Baseline incremental distributed LMS: uniform step size, zero initial
// estimate, one sample per node per cycle.
Trajectory run_idlms(const ModelParams& params, const SampleStream& stream,
                     double mu, int n_cycles);

}  // namespace idlms
