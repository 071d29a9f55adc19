#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace idlms {

using Rng = std::mt19937_64;

// Regressor blocks are stored row major so that one node's sample i is the
// contiguous row i; the update loops walk raw rows.
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Ground truth and dimensions of the linear measurement model
//   d_k(i) = u_{k,i} w_o + v_k(i).
//
// All nodes share one regressor covariance; per-node noise variances carry
// the heterogeneity. A variance of zero is the degenerate noiseless case
// used by convergence tests.
struct ModelParams {
  Eigen::VectorXd w_o;                   // unknown parameter, length dim
  int n_nodes = 0;
  int dim = 0;
  std::vector<double> node_variances;    // sigma^2_{v,k}, one per node
  Eigen::MatrixXd regressor_covariance;  // dim x dim, symmetric positive definite

  void validate() const;
};

// One node's time series. The noise realization is retained so tests can
// check the construction identity d - u w_o == v bit for bit.
struct NodeSamples {
  RowMajorMatrix regressors;     // n_cycles x dim, row i is u_{k,i}
  Eigen::VectorXd measurements;  // n_cycles
  Eigen::VectorXd noise;         // n_cycles
};

struct SampleStream {
  std::vector<NodeSamples> nodes;

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_cycles() const {
    return nodes.empty() ? 0 : static_cast<int>(nodes.front().measurements.size());
  }
};

// Exact global second-order statistics; verification oracle only, no node
// could compute these without extra communication.
struct StatisticsOracle {
  Eigen::MatrixXd r_u;   // sum over nodes of the regressor covariance
  Eigen::VectorXd r_du;  // sum over nodes of the cross covariance
};

// Per-node noise variances drawn i.i.d. uniform on [low, high].
std::vector<double> assign_node_variances(int n_nodes, double low, double high,
                                          Rng& rng);

// Draws the full network time series: Gaussian regressors with the shared
// covariance, Gaussian observation noise per node, measurements assembled by
// the model equation.
SampleStream generate_stream(const ModelParams& params, int n_cycles, Rng& rng);

StatisticsOracle exact_statistics(const ModelParams& params);

// Solves r_u w = r_du. Throws NumericError with a condition-number report if
// the system is singular or ill-conditioned.
Eigen::VectorXd solve_normal_equations(const StatisticsOracle& oracle);

// Checksum over the (u, d) content both algorithms consume; recorded in the
// run manifest to witness the paired-stream discipline.
std::uint64_t stream_checksum(const SampleStream& stream);

}  // namespace idlms
