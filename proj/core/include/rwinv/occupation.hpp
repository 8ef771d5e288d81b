#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rwinv/graph.hpp"
#include "rwinv/spectral.hpp"

namespace rwinv {

enum class OccupationKind { Expected, Empirical };

/// Per-vertex visit counts of walks from v_in absorbed at v_out. The terminal
/// visit to v_out is counted, so values(v_out) == 1.
struct OccupationVector {
  Eigen::VectorXd values;
  OccupationKind kind = OccupationKind::Expected;
};

struct WalkTrace {
  std::vector<Vertex> vertices;
  std::vector<int> trace;

  /// Starts at v_in, ends at v_out, visits v_out once, moves along edges.
  bool proper(const Graph& g) const;
};

/// Visit-count vector of a vertex sequence.
std::vector<int> trace_of(const Graph& g, const std::vector<Vertex>& vertices);

/// The fixed-point matrix M with M r = r for the expected occupation vector r:
///   M(out,out) = M(in,out) = 1,
///   M(v,w) = rho(v) / rho*(w)  for v ~ w, v != out, w != out.
Eigen::MatrixXd occupation_matrix(const Graph& g, const WeightAssignment& w);

/// Solves (M - I) r = 0 with the v_out row pinned to r(out) = 1.
OccupationVector expected_occupation_fixed_point(const Graph& g, const WeightAssignment& w);

/// Laplacians, eigenpairs and Green's matrices for (g, w) in one call.
SpectralData spectral_data(const Graph& g, const WeightAssignment& w);

/// Occupation times through the Green's function G; v_out is reported as 1.
OccupationVector expected_occupation_green(const Graph& g, const WeightAssignment& w,
                                           const SpectralData& spec);

/// E(x -> y) = vol/tilde_rho(y) G(y,y) - vol/tilde_rho(x) G(x,y); 0 when x == y.
double expected_hitting_time(const Graph& g, const WeightAssignment& w, const SpectralData& spec,
                             Vertex x, Vertex y);

using WalkRng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultStepLimit = 10'000'000;

/// Seed of the independent stream used for walk number `index`.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(WalkRng& rng) noexcept;

/// One walk from v_in until the first visit to v_out. Throws
/// StepLimitExceeded when the walk has taken `step_limit` steps.
WalkTrace simulate_walk(const Graph& g, const WeightAssignment& w, WalkRng& rng,
                        std::uint64_t step_limit = kDefaultStepLimit);

struct MonteCarloOptions {
  std::uint64_t walks = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t step_limit = kDefaultStepLimit;
};

struct EmpiricalOccupation {
  OccupationVector mean;
  /// sqrt(sample variance / N) per vertex; zero when N == 1.
  Eigen::VectorXd standard_error;
  std::uint64_t walks = 0;
};

/// Mean trace of N walks. Walk k draws from substream_seed(seed, k), and the
/// per-vertex sums are integers, so the result does not depend on `workers`.
EmpiricalOccupation empirical_occupation(const Graph& g, const WeightAssignment& w,
                                         const MonteCarloOptions& opts);

}  // namespace rwinv
