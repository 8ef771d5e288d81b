#include "rwinv/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "rwinv/error.hpp"

namespace rwinv {
namespace {

// Component count of the graph with `skip` removed (skip = -1 keeps all).
int count_components(const std::vector<std::vector<Vertex>>& adj, Vertex skip) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> seen(n, 0);
  int components = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (s == skip || seen[s]) continue;
    ++components;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj[u]) {
        if (v != skip && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return components;
}

std::string edge_name(Vertex a, Vertex b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Graph Graph::build(int n, std::span<const std::pair<Vertex, Vertex>> edges, Vertex v_in,
                   Vertex v_out) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "need at least two vertices, got " + std::to_string(n));
  auto in_range = [n](Vertex v) { return v >= 0 && v < n; };
  if (!in_range(v_in) || !in_range(v_out)) {
    throw Error(ErrorCode::VertexOutOfRange, "v_in/v_out must lie in [0, n)");
  }
  if (v_in == v_out) throw Error(ErrorCode::InOutCoincide, "v_in and v_out are both " + std::to_string(v_in));

  Graph g;
  g.adjacency_.assign(n, {});
  std::set<Edge> seen;
  for (const auto& [x, y] : edges) {
    if (!in_range(x) || !in_range(y)) {
      throw Error(ErrorCode::VertexOutOfRange, "edge " + edge_name(x, y) + " leaves [0, n)");
    }
    if (x == y) throw Error(ErrorCode::SelfLoop, "edge " + edge_name(x, y));
    const Edge e{std::min(x, y), std::max(x, y)};
    if (!seen.insert(e).second) throw Error(ErrorCode::DuplicateEdge, "edge " + edge_name(e.a, e.b));
    g.edges_.push_back(e);
    g.adjacency_[x].push_back(y);
    g.adjacency_[y].push_back(x);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  g.v_in_ = v_in;
  g.v_out_ = v_out;

  if (count_components(g.adjacency_, -1) != 1) {
    throw Error(ErrorCode::Disconnected, "graph on " + std::to_string(n) + " vertices is not connected");
  }
  g.interior_connected_ = count_components(g.adjacency_, v_out) == 1;

  // BFS from v_out gives both the distances and a two-colouring attempt.
  g.distances_.assign(n, -1);
  g.distances_[v_out] = 0;
  std::queue<Vertex> frontier;
  frontier.push(v_out);
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex v : g.adjacency_[u]) {
      if (g.distances_[v] < 0) {
        g.distances_[v] = g.distances_[u] + 1;
        frontier.push(v);
      }
    }
  }
  g.bipartite_ = std::all_of(g.edges_.begin(), g.edges_.end(), [&](const Edge& e) {
    return (g.distances_[e.a] + g.distances_[e.b]) % 2 == 1;
  });
  if (g.bipartite_) {
    g.bipartition_.resize(n);
    for (Vertex v = 0; v < n; ++v) g.bipartition_[v] = g.distances_[v] % 2 == 0 ? 1 : -1;
  }
  return g;
}

Graph build_graph(int n, std::span<const std::pair<Vertex, Vertex>> edges, Vertex v_in,
                  Vertex v_out) {
  return Graph::build(n, edges, v_in, v_out);
}

bool Graph::adjacent(Vertex x, Vertex y) const {
  const auto& nbrs = adjacency_.at(x);
  return std::binary_search(nbrs.begin(), nbrs.end(), y);
}

bool Graph::is_complete() const noexcept {
  const auto n = static_cast<std::size_t>(size());
  return edges_.size() == n * (n - 1) / 2;
}

std::vector<Vertex> Graph::path_order() const {
  const int n = size();
  if (static_cast<int>(edges_.size()) != n - 1) return {};
  if (degree(v_out_) != 1 || degree(v_in_) != 1) return {};
  std::vector<Vertex> order{v_out_};
  Vertex prev = -1;
  Vertex cur = v_out_;
  while (cur != v_in_) {
    Vertex next = -1;
    for (Vertex v : adjacency_[cur]) {
      if (v != prev) {
        next = v;
        break;
      }
    }
    if (next < 0 || (cur != v_out_ && degree(cur) != 2)) return {};
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  if (static_cast<int>(order.size()) != n) return {};
  return order;
}

void Graph::require_interior_connected() const {
  if (!interior_connected_) {
    throw Error(ErrorCode::InteriorDisconnected,
                "removing v_out=" + std::to_string(v_out_) + " disconnects the graph");
  }
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<Vertex> to_parent(keep.begin(), keep.end());
  std::sort(to_parent.begin(), to_parent.end());
  to_parent.erase(std::unique(to_parent.begin(), to_parent.end()), to_parent.end());
  std::vector<Vertex> to_child(g.size(), -1);
  for (std::size_t i = 0; i < to_parent.size(); ++i) to_child.at(to_parent[i]) = static_cast<Vertex>(i);
  if (to_child[g.v_in()] < 0 || to_child[g.v_out()] < 0) {
    throw Error(ErrorCode::SupportMismatch, "induced subgraph must keep v_in and v_out");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : g.edges()) {
    if (to_child[e.a] >= 0 && to_child[e.b] >= 0) edges.emplace_back(to_child[e.a], to_child[e.b]);
  }
  return Subgraph{Graph::build(static_cast<int>(to_parent.size()), edges, to_child[g.v_in()],
                               to_child[g.v_out()]),
                  std::move(to_parent)};
}

Graph attach_pendant(const Graph& g, Vertex anchor) {
  if (anchor < 0 || anchor >= g.size()) throw Error(ErrorCode::VertexOutOfRange, "pendant anchor");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(g.edges().size() + 1);
  for (const Edge& e : g.edges()) edges.emplace_back(e.a, e.b);
  edges.emplace_back(anchor, g.size());
  return Graph::build(g.size() + 1, edges, g.v_in(), g.v_out());
}

GraphMetrics graph_metrics(const Graph& g) {
  return GraphMetrics{g.distances_to_out(), g.bipartite(), g.bipartition()};
}

WeightAssignment derived_weights(const Graph& g, const Eigen::VectorXd& rho) {
  const int n = g.size();
  if (rho.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "rho has " + std::to_string(rho.size()) + " entries for " + std::to_string(n) + " vertices");
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!(rho[v] > 0.0) || !std::isfinite(rho[v])) {
      throw Error(ErrorCode::NonpositiveWeight, "rho(" + std::to_string(v) + ") = " + std::to_string(rho[v]));
    }
  }
  WeightAssignment w;
  w.rho = rho;
  w.rho_star = Eigen::VectorXd::Zero(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) w.rho_star[v] += rho[u];
  }
  w.tilde_rho = rho.cwiseProduct(w.rho_star);
  w.vol = w.tilde_rho.sum();
  w.edge_wt.reserve(g.edges().size());
  for (const Edge& e : g.edges()) w.edge_wt.push_back(rho[e.a] * rho[e.b]);
  return w;
}

Eigen::VectorXd pin_out(const Graph& g, const Eigen::VectorXd& rho) {
  return rho / rho[g.v_out()];
}

Eigen::MatrixXd transition_matrix(const Graph& g, const WeightAssignment& w) {
  const int n = g.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y : g.neighbors(x)) p(x, y) = w.rho[y] / w.rho_star[x];
  }
  return p;
}

Laplacians laplacians(const Graph& g, const WeightAssignment& w) {
  const int n = g.size();
  Laplacians out;
  out.t_diag = w.tilde_rho;
  out.combinatorial = Eigen::MatrixXd::Zero(n, n);
  out.combinatorial.diagonal() = w.tilde_rho;
  for (const Edge& e : g.edges()) {
    const double wt = w.rho[e.a] * w.rho[e.b];
    out.combinatorial(e.a, e.b) = -wt;
    out.combinatorial(e.b, e.a) = -wt;
  }
  const Eigen::VectorXd inv_sqrt_t = w.tilde_rho.cwiseSqrt().cwiseInverse();
  out.normalized = inv_sqrt_t.asDiagonal() * out.combinatorial * inv_sqrt_t.asDiagonal();
  return out;
}

}  // namespace rwinv
