#include <gtest/gtest.h>

#include <set>

#include "rwinv/error.hpp"
#include "rwinv/occupation.hpp"
#include "support.hpp"

namespace rwinv {
namespace {

// tau(v) = N(in, v) with N = (I - Q)^{-1} the fundamental matrix of the chain
// absorbed at v_out.
Eigen::VectorXd fundamental_oracle(const Graph& g, const WeightAssignment& w) {
  const int n = g.size();
  Eigen::MatrixXd q = transition_matrix(g, w);
  q.row(g.v_out()).setZero();
  q.col(g.v_out()).setZero();
  const Eigen::MatrixXd fundamental = (Eigen::MatrixXd::Identity(n, n) - q).inverse();
  Eigen::VectorXd tau = fundamental.row(g.v_in()).transpose();
  tau[g.v_out()] = 1.0;
  return tau;
}

TEST(Occupation, PathOfThree) {
  const Graph g = testing::path_graph(3);
  const WeightAssignment w = derived_weights(g, Eigen::Vector3d::Ones());
  const Eigen::VectorXd fp = expected_occupation_fixed_point(g, w).values;
  const Eigen::VectorXd gr = expected_occupation_green(g, w, spectral_data(g, w)).values;
  EXPECT_LT((fp - Eigen::Vector3d(1, 2, 2)).norm(), 1e-12);
  EXPECT_LT((gr - Eigen::Vector3d(1, 2, 2)).norm(), 1e-12);
}

TEST(Occupation, Triangle) {
  const Graph g = testing::complete_graph(3);
  const WeightAssignment w = derived_weights(g, Eigen::Vector3d::Ones());
  const Eigen::Vector3d expected(1.0, 4.0 / 3.0, 2.0 / 3.0);
  EXPECT_LT((expected_occupation_fixed_point(g, w).values - expected).norm(), 1e-12);
  EXPECT_LT((expected_occupation_green(g, w, spectral_data(g, w)).values - expected).norm(), 1e-12);
}

TEST(Occupation, SingleEdge) {
  const Graph g = testing::path_graph(2);
  const WeightAssignment w = derived_weights(g, Eigen::Vector2d(1, 7));
  EXPECT_LT((expected_occupation_green(g, w, spectral_data(g, w)).values - Eigen::Vector2d(1, 1)).norm(),
            1e-12);
  EXPECT_LT((expected_occupation_fixed_point(g, w).values - Eigen::Vector2d(1, 1)).norm(), 1e-12);
}

TEST(Occupation, FourCycleTwins) {
  const Graph g = Graph::build(4, testing::cycle_edges(4), 2, 0);
  const WeightAssignment w = derived_weights(g, Eigen::Vector4d(1, 0.5, 1, 0.5));
  EXPECT_LT((expected_occupation_fixed_point(g, w).values - Eigen::Vector4d(1, 1, 2, 1)).norm(), 1e-12);
}

TEST(Occupation, AllMethodsAgreeWithFundamentalMatrix) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = testing::uniform_int(rng, 2, 9);
    const Graph g = testing::random_connected(n, 0.3, rng);
    const WeightAssignment w = derived_weights(g, testing::random_weights(n, rng));
    const Eigen::VectorXd oracle = fundamental_oracle(g, w);
    const double scale = std::max(1.0, oracle.cwiseAbs().maxCoeff());
    EXPECT_LT((expected_occupation_fixed_point(g, w).values - oracle).cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_LT((expected_occupation_green(g, w, spectral_data(g, w)).values - oracle).cwiseAbs().maxCoeff(),
              1e-9 * scale);
  }
}

TEST(Occupation, FixedPointOfM) {
  testing::Rng rng(2);
  const Graph g = testing::random_connected(7, 0.4, rng);
  const WeightAssignment w = derived_weights(g, testing::random_weights(7, rng));
  const Eigen::MatrixXd m = occupation_matrix(g, w);
  const Eigen::VectorXd r = expected_occupation_fixed_point(g, w).values;
  EXPECT_LT((m * r - r).norm(), 1e-10);
  EXPECT_DOUBLE_EQ(r[g.v_out()], 1.0);
}

TEST(Occupation, ScaleInvariance) {
  testing::Rng rng(8);
  const Graph g = testing::random_connected(6, 0.5, rng);
  const Eigen::VectorXd rho = testing::random_weights(6, rng);
  const Eigen::VectorXd a = expected_occupation_fixed_point(g, derived_weights(g, rho)).values;
  const Eigen::VectorXd b = expected_occupation_fixed_point(g, derived_weights(g, 3.7 * rho)).values;
  EXPECT_LT((a - b).norm(), 1e-11);
}

TEST(Occupation, BipartiteGaugeInvariance) {
  testing::Rng rng(12);
  const Graph g = testing::random_tree_leaf_out(7, rng);
  const Eigen::VectorXd rho = testing::random_weights(7, rng);
  Eigen::VectorXd gauged = rho;
  for (int v = 0; v < 7; ++v) gauged[v] *= g.bipartition()[v] > 0 ? 2.5 : 1.0 / 2.5;
  const Eigen::VectorXd a = expected_occupation_fixed_point(g, derived_weights(g, rho)).values;
  const Eigen::VectorXd b = expected_occupation_fixed_point(g, derived_weights(g, gauged)).values;
  EXPECT_LT((a - b).norm(), 1e-10);
}

TEST(Occupation, UnreachableVerticesGetZero) {
  // v_out at the centre of a star: the other leaves are never visited.
  const Graph g = Graph::build(4, testing::EdgeList{{0, 1}, {0, 2}, {0, 3}}, 1, 0);
  const WeightAssignment w = derived_weights(g, Eigen::Vector4d(1, 2, 3, 4));
  const Eigen::Vector4d expected(1, 1, 0, 0);
  EXPECT_LT((expected_occupation_fixed_point(g, w).values - expected).norm(), 1e-12);
  EXPECT_LT((expected_occupation_green(g, w, spectral_data(g, w)).values - expected).norm(), 1e-10);
}

TEST(Walks, SimulatedWalksAreProper) {
  testing::Rng gen(4);
  const Graph g = testing::random_connected(6, 0.4, gen);
  const WeightAssignment w = derived_weights(g, testing::random_weights(6, gen));
  for (std::uint64_t k = 0; k < 200; ++k) {
    WalkRng rng(substream_seed(9, k));
    const WalkTrace walk = simulate_walk(g, w, rng);
    EXPECT_TRUE(walk.proper(g));
    EXPECT_EQ(walk.trace, trace_of(g, walk.vertices));
  }
}

TEST(Walks, StepLimit) {
  const Graph g = testing::path_graph(6);
  const WeightAssignment w = derived_weights(g, Eigen::VectorXd::Ones(6));
  WalkRng rng(1);
  try {
    simulate_walk(g, w, rng, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StepLimitExceeded);
  }
}

TEST(Walks, ImproperWalksDetected) {
  const Graph g = testing::path_graph(3);
  EXPECT_TRUE((WalkTrace{{2, 1, 0}, {1, 1, 1}}).proper(g));
  EXPECT_FALSE((WalkTrace{{2, 0}, {1, 0, 1}}).proper(g));
  EXPECT_FALSE((WalkTrace{{1, 0}, {1, 1, 0}}).proper(g));
}

TEST(Walks, SubstreamsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 1000; ++k) seeds.insert(substream_seed(42, k));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
}

TEST(Walks, Uniform01Range) {
  WalkRng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResult) {
  testing::Rng gen(6);
  const Graph g = testing::random_connected(6, 0.4, gen);
  const WeightAssignment w = derived_weights(g, testing::random_weights(6, gen));
  const EmpiricalOccupation one = empirical_occupation(g, w, {5000, 77, 1, kDefaultStepLimit});
  for (unsigned workers : {2u, 3u, 8u}) {
    const EmpiricalOccupation many = empirical_occupation(g, w, {5000, 77, workers, kDefaultStepLimit});
    EXPECT_EQ(one.mean.values, many.mean.values);
    EXPECT_EQ(one.standard_error, many.standard_error);
  }
}

TEST(MonteCarlo, PathOfThreeWithinFourStandardErrors) {
  const Graph g = testing::path_graph(3);
  const WeightAssignment w = derived_weights(g, Eigen::Vector3d::Ones());
  const EmpiricalOccupation emp = empirical_occupation(g, w, {200000, 42, 2, kDefaultStepLimit});
  const Eigen::Vector3d exact(1, 2, 2);
  EXPECT_EQ(emp.mean.values[0], 1.0);
  EXPECT_EQ(emp.standard_error[0], 0.0);
  for (int v = 1; v < 3; ++v) EXPECT_LE(std::abs(emp.mean.values[v] - exact[v]), 4.0 * emp.standard_error[v]);
}

TEST(MonteCarlo, SingleWalkHasZeroError) {
  const Graph g = testing::path_graph(3);
  const WeightAssignment w = derived_weights(g, Eigen::Vector3d::Ones());
  const EmpiricalOccupation emp = empirical_occupation(g, w, {1, 5, 1, kDefaultStepLimit});
  EXPECT_TRUE(emp.standard_error.isZero());
  EXPECT_EQ(emp.mean.kind, OccupationKind::Empirical);
}

}  // namespace
}  // namespace rwinv
