#include <doctest.h>

#include <random>
#include <vector>

#include "idlms/datagen.hpp"
#include "idlms/errors.hpp"
#include "idlms/incremental.hpp"
#include "idlms/metrics.hpp"
#include "testutil.hpp"

using namespace idlms;

namespace {

ModelParams harness_like_params(int n_nodes, int dim, double variance) {
  ModelParams params;
  params.n_nodes = n_nodes;
  params.dim = dim;
  params.w_o = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  params.node_variances.assign(static_cast<std::size_t>(n_nodes), variance);
  params.regressor_covariance = Eigen::MatrixXd::Identity(dim, dim);
  return params;
}

}  // namespace

TEST_CASE("lms_node_update hand-evaluated example") {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(4);
  Eigen::RowVectorXd u(4);
  u << 1, 0, 0, 0;
  const Eigen::VectorXd out = lms_node_update(psi, u, 1.0, 0.01);
  CHECK(out[0] == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 0.0);
  CHECK(out[3] == 0.0);
}

TEST_CASE("lms_node_update fixed points") {
  Eigen::VectorXd psi(3);
  psi << 0.2, -0.4, 1.5;
  Eigen::RowVectorXd u(3);
  u << 0.3, 0.7, -0.1;
  const double d_match = u[0] * psi[0] + u[1] * psi[1] + u[2] * psi[2];

  // zero instantaneous error
  Eigen::VectorXd out = lms_node_update(psi, u, d_match, 0.05);
  CHECK((out.array() == psi.array()).all());

  // zero step
  out = lms_node_update(psi, u, 7.0, 0.0);
  CHECK((out.array() == psi.array()).all());
}

TEST_CASE("lms_node_update rejects mismatched dimensions") {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(4);
  Eigen::RowVectorXd u = Eigen::RowVectorXd::Zero(3);
  CHECK_THROWS_AS(lms_node_update(psi, u, 1.0, 0.01), std::invalid_argument);
  Eigen::RowVectorXd u4 = Eigen::RowVectorXd::Zero(4);
  CHECK_THROWS_AS(lms_node_update(psi, u4, 1.0, -0.01), std::invalid_argument);
}

TEST_CASE("update direction matches finite differences of the instantaneous cost") {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double mu = 0.01;
  int tested = 0;
  while (tested < 100) {
    Eigen::VectorXd psi(4);
    Eigen::RowVectorXd u(4);
    for (int j = 0; j < 4; ++j) {
      psi[j] = gauss(rng);
      u[j] = gauss(rng);
    }
    const double d = gauss(rng);
    const double err = d - u.dot(psi);
    if (std::abs(err) < 1e-2) continue;  // direction undefined near the fixed point
    ++tested;

    const Eigen::VectorXd step = lms_node_update(psi, u, d, mu) - psi;
    const Eigen::VectorXd analytic = (-2.0 / mu) * step;  // implied gradient
    const Eigen::VectorXd numeric = testutil::finite_diff_gradient(psi, u, d);
    CHECK((numeric - analytic).norm() / numeric.norm() < 1e-6);
  }
}

TEST_CASE("run_cycle composes node updates in ring order") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_nodes = 3;
  const int dim = 4;

  std::vector<CycleSample> samples(n_nodes);
  StepSizeProfile profile;
  profile.mu = {0.02, 0.005, 0.01};
  for (auto& s : samples) {
    s.u.resize(dim);
    for (int j = 0; j < dim; ++j) s.u[j] = gauss(rng);
    s.d = gauss(rng);
  }
  Eigen::VectorXd w_prev(dim);
  for (int j = 0; j < dim; ++j) w_prev[j] = gauss(rng);

  const Eigen::VectorXd got = run_cycle(w_prev, samples, profile);

  // Independent straight-line composition on plain vectors.
  std::vector<double> w(w_prev.data(), w_prev.data() + dim);
  for (int k = 0; k < n_nodes; ++k) {
    std::vector<double> u(samples[k].u.data(), samples[k].u.data() + dim);
    w = testutil::lms_step(w, u, samples[k].d, profile.mu[k]);
  }
  for (int j = 0; j < dim; ++j) CHECK(got[j] == w[static_cast<std::size_t>(j)]);

  // Also bit-equal to chaining the public single-node op.
  Eigen::VectorXd chained = w_prev;
  for (int k = 0; k < n_nodes; ++k)
    chained = lms_node_update(chained, samples[k].u, samples[k].d, profile.mu[k]);
  CHECK((chained.array() == got.array()).all());
}

TEST_CASE("run_cycle contract checks") {
  std::vector<CycleSample> samples(2);
  samples[0].u = Eigen::RowVectorXd::Zero(2);
  samples[1].u = Eigen::RowVectorXd::Zero(2);
  const StepSizeProfile profile = StepSizeProfile::uniform(3, 0.01);
  CHECK_THROWS_AS(run_cycle(Eigen::VectorXd::Zero(2), samples, profile),
                  std::invalid_argument);
}

TEST_CASE("zero profile leaves the estimate unchanged over any horizon") {
  ModelParams params = harness_like_params(5, 4, 0.05);
  Rng rng(77);
  const SampleStream stream = generate_stream(params, 100, rng);
  Eigen::VectorXd start(4);
  start << 0.1, -0.2, 0.3, -0.4;
  const Trajectory traj = run_profiled(params, stream,
                                       StepSizeProfile::uniform(5, 0.0), start, 0, 100);
  for (const auto& w : traj.network_estimate) CHECK((w.array() == start.array()).all());
}

TEST_CASE("single-node run equals a straight-line LMS reference bit for bit") {
  ModelParams params = harness_like_params(1, 4, 0.02);
  Rng rng(31);
  const int n_cycles = 300;
  const SampleStream stream = generate_stream(params, n_cycles, rng);
  const Trajectory traj = run_idlms(params, stream, 0.01, n_cycles);

  std::vector<double> w(4, 0.0);
  const auto& node = stream.nodes[0];
  for (int i = 0; i < n_cycles; ++i) {
    std::vector<double> u(4);
    for (int j = 0; j < 4; ++j) u[static_cast<std::size_t>(j)] = node.regressors(i, j);
    w = testutil::lms_step(w, u, node.measurements[i], 0.01);
    for (int j = 0; j < 4; ++j)
      REQUIRE(traj.network_estimate[static_cast<std::size_t>(i)][j] ==
              w[static_cast<std::size_t>(j)]);
  }
}

TEST_CASE("trajectory entries chain through run_cycle") {
  ModelParams params = harness_like_params(4, 3, 0.01);
  Rng rng(13);
  const SampleStream stream = generate_stream(params, 20, rng);
  const StepSizeProfile profile = StepSizeProfile::uniform(4, 0.01);
  const Trajectory traj = run_profiled(params, stream, profile,
                                       Eigen::VectorXd::Zero(3), 0, 20);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
  for (int i = 0; i < 20; ++i) {
    std::vector<CycleSample> samples(4);
    for (int k = 0; k < 4; ++k) {
      samples[static_cast<std::size_t>(k)].u = stream.nodes[static_cast<std::size_t>(k)].regressors.row(i);
      samples[static_cast<std::size_t>(k)].d = stream.nodes[static_cast<std::size_t>(k)].measurements[i];
    }
    w = run_cycle(w, samples, profile);
    CHECK((traj.network_estimate[static_cast<std::size_t>(i)].array() == w.array()).all());
  }
}

TEST_CASE("noiseless runs converge geometrically") {
  ModelParams params = harness_like_params(30, 4, 0.0);
  Rng rng(2);
  const int n_cycles = 500;
  const SampleStream stream = generate_stream(params, n_cycles, rng);
  const Trajectory traj = run_idlms(params, stream, 0.01, n_cycles);
  const MsdCurve curve = deviation_curve(traj, MsdMode::node_averaged);
  CHECK(curve.values.back() < 1e-10);
}

TEST_CASE("run_idlms is deterministic and validates the stream length") {
  ModelParams params = harness_like_params(3, 4, 0.05);
  Rng rng_a(10);
  Rng rng_b(10);
  const SampleStream a = generate_stream(params, 50, rng_a);
  const SampleStream b = generate_stream(params, 50, rng_b);
  const Trajectory ta = run_idlms(params, a, 0.01, 50);
  const Trajectory tb = run_idlms(params, b, 0.01, 50);
  for (int i = 0; i < 50; ++i)
    CHECK((ta.network_estimate[static_cast<std::size_t>(i)].array() ==
           tb.network_estimate[static_cast<std::size_t>(i)].array()).all());
  CHECK((ta.node_sq_dev.array() == tb.node_sq_dev.array()).all());

  CHECK_THROWS_AS(run_idlms(params, a, 0.01, 51), ConfigError);
}
