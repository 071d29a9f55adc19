#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "idlms/incremental.hpp"

namespace idlms {

// Learning curve on the linear scale. Averaging across runs must happen on
// this scale; decibels are an export-time view.
struct MsdCurve {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
};

enum class MsdMode { node_averaged, single_node };

// Squared Euclidean deviation ||w_o - psi||^2.
double msd(const Eigen::VectorXd& psi, const Eigen::VectorXd& w_o);

// Per-cycle MSD curve of a trajectory: mean over nodes of the pre-update
// squared deviations, or one designated node's column.
MsdCurve deviation_curve(const Trajectory& trajectory, MsdMode mode,
                         int node_id = 0);

// Pointwise mean, accumulated in run-index order.
MsdCurve average_curves(std::span<const MsdCurve> curves);

// Mean over the final ceil(tail_fraction * length) entries.
double steady_state_msd(const MsdCurve& curve, double tail_fraction);

// First cycle at or below threshold_factor times the steady-state level that
// stays there for every later cycle; nullopt if never reached.
std::optional<int> convergence_time(const MsdCurve& curve,
                                    double threshold_factor,
                                    double tail_fraction = 0.1);

double to_decibels(double linear);

}  // namespace idlms
