#include "idlms/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "idlms/numeric.hpp"

namespace idlms {

double msd(const Eigen::VectorXd& psi, const Eigen::VectorXd& w_o) {
  if (psi.size() != w_o.size())
    throw std::invalid_argument("msd: vectors have lengths " +
                                std::to_string(psi.size()) + " and " +
                                std::to_string(w_o.size()));
  return sq_dist_seq(w_o.data(), psi.data(), static_cast<int>(psi.size()));
}

MsdCurve deviation_curve(const Trajectory& trajectory, MsdMode mode, int node_id) {
  const int n_cycles = trajectory.n_cycles();
  const int n_nodes = trajectory.n_nodes();
  if (mode == MsdMode::single_node && (node_id < 0 || node_id >= n_nodes))
    throw std::invalid_argument("deviation_curve: node_id " +
                                std::to_string(node_id) + " outside 0.." +
                                std::to_string(n_nodes - 1));

  MsdCurve curve;
  curve.values.reserve(static_cast<std::size_t>(n_cycles));
  for (int i = 0; i < n_cycles; ++i) {
    if (mode == MsdMode::single_node) {
      curve.values.push_back(trajectory.node_sq_dev(i, node_id));
    } else {
      double acc = 0.0;
      for (int k = 0; k < n_nodes; ++k) acc += trajectory.node_sq_dev(i, k);
      curve.values.push_back(acc / n_nodes);
    }
  }
  return curve;
}

MsdCurve average_curves(std::span<const MsdCurve> curves) {
  if (curves.empty())
    throw std::invalid_argument("average_curves: need at least one curve");
  const std::size_t length = curves.front().values.size();
  for (const auto& curve : curves) {
    if (curve.values.size() != length)
      throw std::invalid_argument("average_curves: curves have ragged lengths");
  }

  MsdCurve out;
  out.values.resize(length);
  const auto n_curves = static_cast<double>(curves.size());
  for (std::size_t i = 0; i < length; ++i) {
    double acc = 0.0;
    for (const auto& curve : curves) acc += curve.values[i];  // run-index order
    out.values[i] = acc / n_curves;
  }
  return out;
}

double steady_state_msd(const MsdCurve& curve, double tail_fraction) {
  if (curve.values.empty())
    throw std::invalid_argument("steady_state_msd: empty curve");
  if (!(tail_fraction > 0.0) || !(tail_fraction <= 1.0))
    throw std::invalid_argument("steady_state_msd: tail_fraction must be in (0, 1]");

  const auto length = curve.values.size();
  auto count = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(length)));
  if (count < 1) count = 1;
  if (count > length) count = length;

  double acc = 0.0;
  for (std::size_t i = length - count; i < length; ++i) acc += curve.values[i];
  return acc / static_cast<double>(count);
}

std::optional<int> convergence_time(const MsdCurve& curve, double threshold_factor,
                                    double tail_fraction) {
  if (curve.values.empty())
    throw std::invalid_argument("convergence_time: empty curve");
  if (!(threshold_factor > 1.0))
    throw std::invalid_argument("convergence_time: threshold_factor must exceed 1");

  const double threshold = threshold_factor * steady_state_msd(curve, tail_fraction);
  int last_above = -1;
  for (int i = 0; i < curve.size(); ++i) {
    if (curve.values[static_cast<std::size_t>(i)] > threshold) last_above = i;
  }
  if (last_above == curve.size() - 1) return std::nullopt;  // never settles
  return last_above + 1;
}

double to_decibels(double linear) { return 10.0 * std::log10(linear); }

}  // namespace idlms
