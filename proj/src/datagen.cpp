#include "idlms/datagen.hpp"

#include <cmath>
#include <string>

#include "idlms/errors.hpp"
#include "idlms/numeric.hpp"

namespace idlms {

void ModelParams::validate() const {
  if (n_nodes <= 0) throw ConfigError("n_nodes must be positive");
  if (dim <= 0) throw ConfigError("dim must be positive");
  if (static_cast<int>(w_o.size()) != dim)
    throw ConfigError("w_o has length " + std::to_string(w_o.size()) +
                      ", expected dim = " + std::to_string(dim));
  if (static_cast<int>(node_variances.size()) != n_nodes)
    throw ConfigError("node_variances has " +
                      std::to_string(node_variances.size()) +
                      " entries, expected n_nodes = " + std::to_string(n_nodes));
  for (int k = 0; k < n_nodes; ++k) {
    const double var = node_variances[static_cast<std::size_t>(k)];
    if (!std::isfinite(var) || var < 0.0)
      throw ConfigError("node_variances[" + std::to_string(k) +
                        "] must be a finite non-negative value");
  }
  if (regressor_covariance.rows() != dim || regressor_covariance.cols() != dim)
    throw ConfigError("regressor_covariance must be " + std::to_string(dim) +
                      "x" + std::to_string(dim));
  const double asym =
      (regressor_covariance - regressor_covariance.transpose()).cwiseAbs().maxCoeff();
  const double scale = regressor_covariance.cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw ConfigError("regressor_covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(regressor_covariance);
  if (llt.info() != Eigen::Success)
    throw NumericError("regressor_covariance is not positive definite");
}

std::vector<double> assign_node_variances(int n_nodes, double low, double high,
                                          Rng& rng) {
  if (n_nodes <= 0) throw ConfigError("n_nodes must be positive");
  if (!(low > 0.0) || !std::isfinite(low))
    throw ConfigError("variance_low must be a positive finite value");
  if (!(high >= low) || !std::isfinite(high))
    throw ConfigError("variance_high (" + format_double(high) +
                      ") must be at least variance_low (" + format_double(low) +
                      ")");
  std::uniform_real_distribution<double> uniform(low, high);
  std::vector<double> variances(static_cast<std::size_t>(n_nodes));
  for (auto& v : variances) v = uniform(rng);
  return variances;
}

SampleStream generate_stream(const ModelParams& params, int n_cycles, Rng& rng) {
  params.validate();
  if (n_cycles < 1) throw ConfigError("n_cycles must be at least 1");

  Eigen::LLT<Eigen::MatrixXd> llt(params.regressor_covariance);
  const Eigen::MatrixXd factor = llt.matrixL();

  const int m = params.dim;
  SampleStream stream;
  stream.nodes.resize(static_cast<std::size_t>(params.n_nodes));
  std::vector<double> noise_scale(static_cast<std::size_t>(params.n_nodes));
  for (int k = 0; k < params.n_nodes; ++k) {
    auto& node = stream.nodes[static_cast<std::size_t>(k)];
    node.regressors.resize(n_cycles, m);
    node.measurements.resize(n_cycles);
    node.noise.resize(n_cycles);
    noise_scale[static_cast<std::size_t>(k)] =
        std::sqrt(params.node_variances[static_cast<std::size_t>(k)]);
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd z(m);
  Eigen::VectorXd u(m);
  const double* w_o = params.w_o.data();

  // Time-major draw order, nodes inner: z (m draws) then the noise draw.
  for (int i = 0; i < n_cycles; ++i) {
    for (int k = 0; k < params.n_nodes; ++k) {
      auto& node = stream.nodes[static_cast<std::size_t>(k)];
      for (int j = 0; j < m; ++j) z[j] = gauss(rng);
      u.noalias() = factor * z;
      double* row = node.regressors.data() + static_cast<std::size_t>(i) * m;
      for (int j = 0; j < m; ++j) row[j] = u[j];
      const double clean = dot_seq(row, w_o, m);
      const double drawn = noise_scale[static_cast<std::size_t>(k)] * gauss(rng);
      const double d = clean + drawn;
      node.measurements[i] = d;
      // Retain the noise as the realized double-precision difference, not the
      // drawn value: d - u w_o then reproduces it bit for bit (the two differ
      // by at most one rounding of d).
      node.noise[i] = d - clean;
    }
  }
  return stream;
}

StatisticsOracle exact_statistics(const ModelParams& params) {
  params.validate();
  StatisticsOracle oracle;
  oracle.r_u = static_cast<double>(params.n_nodes) * params.regressor_covariance;
  oracle.r_du = oracle.r_u * params.w_o;
  return oracle;
}

Eigen::VectorXd solve_normal_equations(const StatisticsOracle& oracle) {
  const auto m = oracle.r_u.rows();
  if (oracle.r_u.cols() != m)
    throw std::invalid_argument("solve_normal_equations: r_u must be square");
  if (oracle.r_du.size() != m)
    throw std::invalid_argument(
        "solve_normal_equations: r_du length does not match r_u");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(oracle.r_u,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  constexpr double kMaxCondition = 1e12;
  if (!(smin > 0.0) || smax / smin > kMaxCondition) {
    const std::string cond =
        smin > 0.0 ? format_double(smax / smin) : "inf (singular)";
    throw NumericError(
        "normal equations are singular or ill-conditioned: condition number " +
        cond);
  }
  return svd.solve(oracle.r_du);
}

std::uint64_t stream_checksum(const SampleStream& stream) {
  Fnv1a64 hash;
  for (const auto& node : stream.nodes) {
    hash.update(node.regressors.data(),
                sizeof(double) * static_cast<std::size_t>(node.regressors.size()));
    hash.update(node.measurements.data(),
                sizeof(double) * static_cast<std::size_t>(node.measurements.size()));
  }
  return hash.digest();
}

}  // namespace idlms
