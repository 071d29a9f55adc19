#include <doctest.h>

#include <cmath>
#include <numeric>

#include "idlms/datagen.hpp"
#include "idlms/errors.hpp"
#include "idlms/numeric.hpp"
#include "testutil.hpp"

using namespace idlms;

namespace {

ModelParams small_params(int n_nodes = 4, int dim = 4) {
  ModelParams params;
  params.n_nodes = n_nodes;
  params.dim = dim;
  params.w_o = Eigen::VectorXd::LinSpaced(dim, 0.5, 1.0);
  params.node_variances.assign(static_cast<std::size_t>(n_nodes), 0.05);
  params.regressor_covariance = Eigen::MatrixXd::Identity(dim, dim);
  return params;
}

}  // namespace

TEST_CASE("assign_node_variances stays inside the interval") {
  Rng rng(123);
  const auto vars = assign_node_variances(30, 1e-3, 1e-1, rng);
  REQUIRE(vars.size() == 30);
  for (double v : vars) {
    CHECK(v >= 1e-3);
    CHECK(v <= 1e-1);
  }
}

TEST_CASE("assign_node_variances degenerate interval") {
  Rng rng(5);
  const auto vars = assign_node_variances(5, 0.05, 0.05, rng);
  REQUIRE(vars.size() == 5);
  for (double v : vars) CHECK(v == 0.05);
}

TEST_CASE("assign_node_variances Monte-Carlo mean") {
  // 1e6 uniform draws on [~0, 1]: mean 0.5 within +-0.002.
  Rng rng(777);
  const auto vars = assign_node_variances(1000000, 1e-12, 1.0, rng);
  const double mean =
      std::accumulate(vars.begin(), vars.end(), 0.0) / static_cast<double>(vars.size());
  CHECK(mean == doctest::Approx(0.5).epsilon(0.004));
}

TEST_CASE("assign_node_variances rejects bad bounds") {
  Rng rng(1);
  CHECK_THROWS_AS(assign_node_variances(3, 0.0, 0.1, rng), ConfigError);
  CHECK_THROWS_AS(assign_node_variances(3, -0.1, 0.1, rng), ConfigError);
  CHECK_THROWS_AS(assign_node_variances(3, 0.2, 0.1, rng), ConfigError);
}

TEST_CASE("generate_stream identity regressor and zero noise gives d = w_o[0]") {
  ModelParams params = small_params(1, 4);
  params.w_o = Eigen::VectorXd::Zero(4);
  params.w_o[0] = 1.0;
  params.node_variances = {0.0};
  // Covariance with a single active direction: u = (z, 0, 0, 0).
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(4, 4) * 1e-18;
  cov(0, 0) = 1.0;
  params.regressor_covariance = cov;
  Rng rng(9);
  const SampleStream stream = generate_stream(params, 10, rng);
  const auto& node = stream.nodes[0];
  for (int i = 0; i < 10; ++i) {
    CHECK(node.noise[i] == 0.0);
    CHECK(node.measurements[i] ==
          doctest::Approx(node.regressors(i, 0)).epsilon(1e-12));
  }
}

TEST_CASE("construction identity holds bit for bit") {
  ModelParams params = small_params(3, 4);
  Rng rng(2024);
  const SampleStream stream = generate_stream(params, 200, rng);
  for (const auto& node : stream.nodes) {
    for (int i = 0; i < 200; ++i) {
      const double* row = node.regressors.data() + static_cast<std::size_t>(i) * 4;
      const double recomputed =
          node.measurements[i] - dot_seq(row, params.w_o.data(), 4);
      CHECK(recomputed == node.noise[i]);
    }
  }
}

TEST_CASE("generate_stream is deterministic in the seed") {
  ModelParams params = small_params();
  Rng rng_a(31337);
  Rng rng_b(31337);
  const SampleStream a = generate_stream(params, 50, rng_a);
  const SampleStream b = generate_stream(params, 50, rng_b);
  for (int k = 0; k < params.n_nodes; ++k) {
    CHECK((a.nodes[k].regressors.array() == b.nodes[k].regressors.array()).all());
    CHECK((a.nodes[k].measurements.array() == b.nodes[k].measurements.array()).all());
    CHECK((a.nodes[k].noise.array() == b.nodes[k].noise.array()).all());
  }
  CHECK(stream_checksum(a) == stream_checksum(b));
}

TEST_CASE("realized noise variance matches the configured one") {
  ModelParams params = small_params(2, 4);
  params.node_variances = {0.05, 0.002};
  Rng rng(404);
  const int n = 100000;
  const SampleStream stream = generate_stream(params, n, rng);
  for (int k = 0; k < 2; ++k) {
    const auto& node = stream.nodes[static_cast<std::size_t>(k)];
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += node.noise[i] * node.noise[i];
    const double realized = acc / n;
    CHECK(realized ==
          doctest::Approx(params.node_variances[static_cast<std::size_t>(k)])
              .epsilon(0.03));
  }
}

TEST_CASE("empirical regressor covariance matches identity") {
  ModelParams params = small_params(1, 4);
  Rng rng(555);
  const int n = 100000;
  const SampleStream stream = generate_stream(params, n, rng);
  const auto& u = stream.nodes[0].regressors;
  const Eigen::MatrixXd cov = (u.transpose() * u) / static_cast<double>(n);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double expected = r == c ? 1.0 : 0.0;
      CHECK(std::abs(cov(r, c) - expected) < 0.05);
    }
  }
}

TEST_CASE("solve_normal_equations identity and scaling cases") {
  ModelParams params = small_params(1, 4);
  StatisticsOracle oracle;
  oracle.r_u = Eigen::MatrixXd::Identity(4, 4);
  oracle.r_du = params.w_o;
  CHECK((solve_normal_equations(oracle) - params.w_o).cwiseAbs().maxCoeff() < 1e-12);

  oracle.r_u = 2.0 * Eigen::MatrixXd::Identity(4, 4);
  oracle.r_du = 2.0 * params.w_o;
  CHECK((solve_normal_equations(oracle) - params.w_o).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("solve_normal_equations recovers a constructed solution") {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd r_u = testutil::random_spd(6, rng);
    Eigen::VectorXd w_ref(6);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 6; ++j) w_ref[j] = gauss(rng);
    StatisticsOracle oracle{r_u, r_u * w_ref};
    const Eigen::VectorXd w = solve_normal_equations(oracle);
    CHECK((w - w_ref).norm() / w_ref.norm() < 1e-10);
  }
}

TEST_CASE("solve_normal_equations reports the condition number on failure") {
  StatisticsOracle oracle;
  oracle.r_u = Eigen::MatrixXd::Ones(3, 3);  // rank 1
  oracle.r_du = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_WITH_AS(solve_normal_equations(oracle),
                       doctest::Contains("condition number"), NumericError);
}

TEST_CASE("exact statistics recover the ground truth") {
  ModelParams params = small_params(7, 5);
  params.w_o = Eigen::VectorXd::LinSpaced(5, -1.0, 2.0);
  std::mt19937_64 rng(99);
  params.regressor_covariance = testutil::random_spd(5, rng);
  const Eigen::VectorXd w = solve_normal_equations(exact_statistics(params));
  CHECK((w - params.w_o).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ModelParams validation rejects broken inputs") {
  ModelParams params = small_params();
  params.node_variances[1] = -0.5;
  CHECK_THROWS_AS(params.validate(), ConfigError);

  params = small_params();
  params.w_o = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(params.validate(), ConfigError);

  params = small_params();
  params.regressor_covariance(0, 1) = 0.9;  // asymmetric
  CHECK_THROWS_AS(params.validate(), ConfigError);

  params = small_params();
  params.regressor_covariance = -Eigen::MatrixXd::Identity(4, 4);
  CHECK_THROWS_AS(params.validate(), NumericError);
}
