#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rwinv {

using Vertex = int;

/// Undirected edge, stored with a < b.
struct Edge {
  Vertex a;
  Vertex b;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple connected undirected graph with a start vertex (v_in) and an
/// absorbing vertex (v_out). Immutable once built; all structural facts the
/// rest of the library branches on are computed at construction.
class Graph {
 public:
  /// Empty placeholder; only useful as an assignment target.
  Graph() = default;

  /// Validates and builds. Throws Error with VertexOutOfRange, SelfLoop,
  /// DuplicateEdge, InOutCoincide or Disconnected.
  static Graph build(int n, std::span<const std::pair<Vertex, Vertex>> edges, Vertex v_in,
                     Vertex v_out);

  int size() const noexcept { return static_cast<int>(adjacency_.size()); }
  Vertex v_in() const noexcept { return v_in_; }
  Vertex v_out() const noexcept { return v_out_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  bool adjacent(Vertex x, Vertex y) const;

  /// True iff G minus v_out is connected.
  bool interior_connected() const noexcept { return interior_connected_; }
  bool bipartite() const noexcept { return bipartite_; }
  /// BFS distance of every vertex to v_out.
  const std::vector<int>& distances_to_out() const noexcept { return distances_; }
  /// +1/-1 two-colouring with side(v_out) = +1; empty when not bipartite.
  const std::vector<int>& bipartition() const noexcept { return bipartition_; }

  bool is_complete() const noexcept;
  /// Vertices in order from v_out to v_in when the graph is a path with those
  /// two endpoints; empty otherwise.
  std::vector<Vertex> path_order() const;

  /// Throws InteriorDisconnected unless G minus v_out is connected.
  void require_interior_connected() const;

 private:

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
  Vertex v_in_ = 0;
  Vertex v_out_ = 0;
  bool interior_connected_ = false;
  bool bipartite_ = false;
  std::vector<int> distances_;
  std::vector<int> bipartition_;
};

Graph build_graph(int n, std::span<const std::pair<Vertex, Vertex>> edges, Vertex v_in,
                  Vertex v_out);

/// Graph restricted to a vertex subset, with the map back to parent ids.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

/// Induced subgraph on `keep` (which must contain v_in and v_out). Throws the
/// usual construction errors, Disconnected in particular.
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

/// Copy of g with one new vertex (id g.size()) joined only to `anchor`.
Graph attach_pendant(const Graph& g, Vertex anchor);

struct GraphMetrics {
  std::vector<int> distances;
  bool bipartite = false;
  std::vector<int> bipartition;
};

GraphMetrics graph_metrics(const Graph& g);

/// Vertex weights and everything derived from them under wt(x,y) = rho(x)rho(y).
struct WeightAssignment {
  Eigen::VectorXd rho;
  Eigen::VectorXd tilde_rho;
  Eigen::VectorXd rho_star;
  /// Aligned with Graph::edges().
  std::vector<double> edge_wt;
  double vol = 0.0;
};

/// Throws NonpositiveWeight or DimensionMismatch.
WeightAssignment derived_weights(const Graph& g, const Eigen::VectorXd& rho);

/// rho rescaled so that rho(v_out) = 1.
Eigen::VectorXd pin_out(const Graph& g, const Eigen::VectorXd& rho);

/// P(x,y) = rho(y) / sum_{z ~ x} rho(z).
Eigen::MatrixXd transition_matrix(const Graph& g, const WeightAssignment& w);

struct Laplacians {
  Eigen::MatrixXd combinatorial;
  /// Diagonal of T, i.e. tilde_rho.
  Eigen::VectorXd t_diag;
  Eigen::MatrixXd normalized;
};

Laplacians laplacians(const Graph& g, const WeightAssignment& w);

}  // namespace rwinv
