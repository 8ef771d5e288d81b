#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rwinv/graph.hpp"

namespace rwinv::testing {

using Rng = std::mt19937_64;
using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Graph make_graph(int n, const EdgeList& edges, Vertex v_in, Vertex v_out) {
  return Graph::build(n, edges, v_in, v_out);
}

/// 0 - 1 - ... - (n-1) with v_out = 0 and v_in = n - 1.
inline Graph path_graph(int n) {
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e, n - 1, 0);
}

inline EdgeList complete_edges(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

/// K_n with v_out = 0 and v_in = 1.
inline Graph complete_graph(int n) { return make_graph(n, complete_edges(n), 1, 0); }

inline EdgeList cycle_edges(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return e;
}

/// Random recursive tree: vertex k joins a uniformly chosen earlier vertex.
inline EdgeList random_tree_edges(int n, Rng& rng) {
  EdgeList e;
  for (int k = 1; k < n; ++k) e.emplace_back(uniform_int(rng, 0, k - 1), k);
  return e;
}

inline std::vector<int> degrees(int n, const EdgeList& edges) {
  std::vector<int> d(n, 0);
  for (auto [a, b] : edges) {
    ++d[a];
    ++d[b];
  }
  return d;
}

/// Random tree whose v_out is a leaf; v_in is another random vertex.
inline Graph random_tree_leaf_out(int n, Rng& rng) {
  const EdgeList e = random_tree_edges(n, rng);
  const std::vector<int> d = degrees(n, e);
  std::vector<Vertex> leaves;
  for (int v = 0; v < n; ++v)
    if (d[v] == 1) leaves.push_back(v);
  const Vertex out = leaves[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(leaves.size()) - 1))];
  Vertex in = out;
  while (in == out) in = uniform_int(rng, 0, n - 1);
  return make_graph(n, e, in, out);
}

/// Random tree plus each remaining edge independently with probability p.
inline Graph random_connected(int n, double p, Rng& rng) {
  EdgeList e = random_tree_edges(n, rng);
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  for (auto [a, b] : e) has[a][b] = has[b][a] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!has[i][j] && uniform(rng, 0.0, 1.0) < p) e.emplace_back(i, j);
  const Vertex out = uniform_int(rng, 0, n - 1);
  Vertex in = out;
  while (in == out) in = uniform_int(rng, 0, n - 1);
  return make_graph(n, e, in, out);
}

inline Eigen::VectorXd random_weights(int n, Rng& rng, double lo = 0.2, double hi = 5.0) {
  Eigen::VectorXd rho(n);
  for (int v = 0; v < n; ++v) rho[v] = uniform(rng, lo, hi);
  return rho;
}

/// One representative edge list per isomorphism class of connected simple
/// graphs on n vertices (n <= 7), found by brute-force canonical forms.
inline std::vector<EdgeList> connected_graphs_up_to_isomorphism(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    slot_of[slots[k].first][slots[k].second] = static_cast<int>(k);
    slot_of[slots[k].second][slots[k].first] = static_cast<int>(k);
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto connected = [&](std::uint32_t mask) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        if (w == u || seen[w] || !(mask >> slot_of[u][w] & 1u)) continue;
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
    return count == n;
  };

  std::vector<EdgeList> out;
  std::vector<bool> done(std::size_t{1} << slots.size(), false);
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    if (done[mask]) continue;
    for (const auto& perm : perms) {
      std::uint32_t image = 0;
      for (std::size_t k = 0; k < slots.size(); ++k)
        if (mask >> k & 1u) image |= 1u << slot_of[perm[slots[k].first]][perm[slots[k].second]];
      done[image] = true;
    }
    if (!connected(mask)) continue;
    EdgeList e;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1u) e.push_back(slots[k]);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rwinv::testing
