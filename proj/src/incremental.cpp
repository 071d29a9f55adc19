#include "idlms/incremental.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "idlms/errors.hpp"
#include "idlms/numeric.hpp"

namespace idlms {

namespace {

// The one place the update arithmetic lives. Error first (left-to-right dot),
// then one fused scale, then coordinate-wise correction.
inline void lms_update_inplace(Eigen::VectorXd& psi, const double* u, double d,
                               double mu) {
  const int m = static_cast<int>(psi.size());
  const double err = d - dot_seq(u, psi.data(), m);
  const double scale = mu * err;
  double* p = psi.data();
  for (int j = 0; j < m; ++j) p[j] += scale * u[j];
}

void check_profile(const StepSizeProfile& profile) {
  for (double mu : profile.mu) {
    if (!std::isfinite(mu) || mu < 0.0)
      throw std::invalid_argument(
          "step-size profile entries must be finite and non-negative");
  }
}

}  // namespace

StepSizeProfile StepSizeProfile::uniform(int n_nodes, double mu) {
  if (n_nodes <= 0)
    throw std::invalid_argument("StepSizeProfile::uniform: n_nodes must be positive");
  if (!std::isfinite(mu) || mu < 0.0)
    throw std::invalid_argument(
        "StepSizeProfile::uniform: mu must be finite and non-negative");
  return StepSizeProfile{std::vector<double>(static_cast<std::size_t>(n_nodes), mu)};
}

Eigen::VectorXd lms_node_update(const Eigen::VectorXd& psi,
                                Eigen::Ref<const Eigen::RowVectorXd> u, double d,
                                double mu) {
  if (u.size() != psi.size())
    throw std::invalid_argument("lms_node_update: regressor length " +
                                std::to_string(u.size()) +
                                " does not match estimate length " +
                                std::to_string(psi.size()));
  if (!std::isfinite(mu) || mu < 0.0)
    throw std::invalid_argument(
        "lms_node_update: mu must be finite and non-negative");
  Eigen::VectorXd out = psi;
  lms_update_inplace(out, u.data(), d, mu);
  return out;
}

Eigen::VectorXd run_cycle(const Eigen::VectorXd& w_prev,
                          std::span<const CycleSample> samples,
                          const StepSizeProfile& profile) {
  if (static_cast<int>(samples.size()) != profile.n_nodes())
    throw std::invalid_argument(
        "run_cycle: got " + std::to_string(samples.size()) +
        " samples for a profile of " + std::to_string(profile.n_nodes()) +
        " nodes");
  if (samples.empty()) throw std::invalid_argument("run_cycle: no samples");
  check_profile(profile);

  Eigen::VectorXd psi = w_prev;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& sample = samples[k];
    if (sample.u.size() != psi.size())
      throw std::invalid_argument("run_cycle: sample " + std::to_string(k) +
                                  " has regressor length " +
                                  std::to_string(sample.u.size()));
    lms_update_inplace(psi, sample.u.data(), sample.d, profile.mu[k]);
  }
  return psi;
}

Trajectory run_profiled(const ModelParams& params, const SampleStream& stream,
                        const StepSizeProfile& profile,
                        const Eigen::VectorXd& psi_start, int first_cycle,
                        int n_cycles) {
  params.validate();
  check_profile(profile);
  if (profile.n_nodes() != params.n_nodes)
    throw std::invalid_argument("run_profiled: profile covers " +
                                std::to_string(profile.n_nodes()) +
                                " nodes, model has " +
                                std::to_string(params.n_nodes));
  if (psi_start.size() != params.dim)
    throw std::invalid_argument("run_profiled: psi_start has length " +
                                std::to_string(psi_start.size()) +
                                ", expected dim = " + std::to_string(params.dim));
  if (stream.n_nodes() != params.n_nodes)
    throw ConfigError("stream covers " + std::to_string(stream.n_nodes()) +
                      " nodes, model has " + std::to_string(params.n_nodes));
  if (first_cycle < 0 || first_cycle > n_cycles)
    throw ConfigError("invalid cycle range [" + std::to_string(first_cycle) +
                      ", " + std::to_string(n_cycles) + ")");
  if (stream.n_cycles() < n_cycles)
    throw ConfigError("stream provides " + std::to_string(stream.n_cycles()) +
                      " cycles, run requires " + std::to_string(n_cycles));

  const int n_span = n_cycles - first_cycle;
  const int m = params.dim;
  Trajectory trajectory;
  trajectory.network_estimate.reserve(static_cast<std::size_t>(n_span));
  trajectory.node_sq_dev.resize(n_span, params.n_nodes);

  Eigen::VectorXd psi = psi_start;
  const double* w_o = params.w_o.data();
  for (int i = first_cycle; i < n_cycles; ++i) {
    const int row = i - first_cycle;
    for (int k = 0; k < params.n_nodes; ++k) {
      const auto& node = stream.nodes[static_cast<std::size_t>(k)];
      const double* u = node.regressors.data() + static_cast<std::size_t>(i) * m;
      trajectory.node_sq_dev(row, k) = sq_dist_seq(w_o, psi.data(), m);
      lms_update_inplace(psi, u, node.measurements[i], profile.mu[static_cast<std::size_t>(k)]);
    }
    trajectory.network_estimate.push_back(psi);
  }
  return trajectory;
}

Trajectory run_idlms(const ModelParams& params, const SampleStream& stream,
                     double mu, int n_cycles) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("run_idlms: mu must be positive and finite");
  if (n_cycles < 1) throw ConfigError("n_cycles must be at least 1");
  return run_profiled(params, stream, StepSizeProfile::uniform(params.n_nodes, mu),
                      Eigen::VectorXd::Zero(params.dim), 0, n_cycles);
}

}  // namespace idlms
