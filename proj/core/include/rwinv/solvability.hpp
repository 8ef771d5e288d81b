#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rwinv/graph.hpp"
#include "rwinv/occupation.hpp"

namespace rwinv {

using Trace = std::vector<int>;

/// tr(x) = number of occurrences of x in the walk.
Trace trace_vector(const Graph& g, const WalkTrace& walk);

/// Every proper walk of at most `length_cap` steps, in lexicographic order of
/// the vertex sequence. Throws CapTooSmall when none fits and
/// EnumerationLimit past `max_walks`.
std::vector<WalkTrace> enumerate_proper_walks(const Graph& g, int length_cap,
                                              std::size_t max_walks = 1'000'000);

/// Distinct traces of proper walks of at most `length_cap` steps, sorted.
/// Walks are never materialised, so caps far beyond what
/// enumerate_proper_walks can reach stay cheap.
std::vector<Trace> proper_traces(const Graph& g, int length_cap);

/// Exact (integer) affine dimension of a point set.
int affine_dimension(const std::vector<Trace>& points);

/// 4n, the cap used when none is given.
int default_cap(const Graph& g) noexcept;

struct TraceHull {
  std::vector<Trace> generators;
  int affine_dimension = 0;
  bool bipartite = false;
  int cap = 0;
};

TraceHull trace_hull(const Graph& g, int length_cap);

/// Affine dimension of the proper-walk traces at the given cap (0 means
/// default_cap). Stops early once the dimension reaches n - 1.
int hull_dimension(const Graph& g, int length_cap = 0);

enum class HullVerdict { Interior, Boundary, Outside };

struct RelintResult {
  bool relint = false;
  HullVerdict verdict = HullVerdict::Outside;
  /// Largest e in [0, 1] with r + e (r - centroid) inside the hull.
  double certificate = 0.0;
  int cap_used = 0;
  int hull_dim = 0;
  bool bipartite = false;
  std::size_t generators = 0;
};

/// Whether r lies in the relative interior of the convex hull of truncated
/// proper-walk traces. A negative answer at the first cap is retried once at
/// twice the cap. Truncation only shrinks the hull, so `true` is final.
RelintResult relint_membership(const Graph& g, const OccupationVector& r, int length_cap = 0);

struct PathDecomposition {
  /// Vertex ids from v_out to v_in.
  std::vector<Vertex> order;
  /// alphas[k] is the coefficient of f_{k+2} = e_{k+2} + e_{k+3} (1-based
  /// positions along the path).
  Eigen::VectorXd alphas;
};

/// r = 1 + sum_j alpha_j f_j on a path from v_out to v_in. Throws
/// FamilyMismatch for other graphs and NotInPsi when some alpha_j <= 0 or the
/// last coordinate is inconsistent.
PathDecomposition path_decompose(const Graph& g, const OccupationVector& r);

/// Closed-form weights on a path with tau_rho = r.
WeightAssignment solve_path(const Graph& g, const OccupationVector& r);

/// Weights on a complete graph with tau_rho = r, found by bisection over the
/// weight of v_out on the unit simplex.
WeightAssignment solve_complete(const Graph& g, const OccupationVector& r);

/// Weight for a new degree-one vertex so that it receives `alpha` expected
/// visits when its anchor receives `r_anchor`.
double pendant_weight(double anchor_rho_star, double alpha, double r_anchor);

struct PendantExtension {
  Graph graph;  // new vertex has id g.size()
  WeightAssignment weights;
};

/// Given w solving tau = r - alpha e_v on g, attaches a pendant vertex at v
/// whose weights give tau = r on g and alpha at the new vertex.
PendantExtension extend_pendant(const Graph& g, const WeightAssignment& w, Vertex v, double alpha,
                                const OccupationVector& r);

struct TwinReduction {
  Subgraph reduced;  // g with the second twin removed
  OccupationVector reduced_r;
  Vertex kept = 0;
  Vertex merged = 0;
  /// Share of the merged weight that returns to `kept`.
  double split = 0.0;
};

/// Merges twin w into v (N(v) == N(w), neither is v_in or v_out).
TwinReduction reduce_twins(const Graph& g, const OccupationVector& r, Vertex v, Vertex w);

/// Splits a solution of the reduced instance back onto g.
Eigen::VectorXd split_twins(const Graph& g, const TwinReduction& reduction,
                            const Eigen::VectorXd& reduced_rho);

/// Exact weights on graphs that reduce to a path or a complete graph by
/// stripping pendant vertices and merging twins; this includes all trees.
/// Throws NotInPsi (with the failing stage) or Irreducible.
WeightAssignment solve_reducible(const Graph& g, const OccupationVector& r);

}  // namespace rwinv
