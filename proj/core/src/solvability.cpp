#include "rwinv/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "rwinv/error.hpp"
#include "rwinv/lp.hpp"

namespace rwinv {
namespace {

constexpr double kPathRoundTripTol = 1e-9;
constexpr double kRoundTripTol = 1e-8;

void verify_round_trip(const Graph& g, const Eigen::VectorXd& rho, const Eigen::VectorXd& r,
                       double tol, const std::string& stage) {
  const WeightAssignment w = derived_weights(g, rho);
  const Eigen::VectorXd tau = expected_occupation_fixed_point(g, w).values;
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  const double err = (tau - r).cwiseAbs().maxCoeff();
  if (!(err <= tol * scale)) {
    throw Error(ErrorCode::RoundTripFailure,
                stage + ": forward map misses the target by " + std::to_string(err));
  }
}

void require_out_is_one(const Graph& g, const OccupationVector& r) {
  if (r.values.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "target has " + std::to_string(r.values.size()) +
                                                  " entries for " + std::to_string(g.size()) +
                                                  " vertices");
  }
  if (std::abs(r.values[g.v_out()] - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotInPsi, "r(v_out) must equal 1");
  }
}

__extension__ using Wide = __int128;

// Exact rank of integer vectors, built incrementally by fraction-free
// elimination with gcd normalisation.
class IntegerRank {
 public:
  explicit IntegerRank(int dim) : dim_(dim) {}

  // Returns true when v increased the rank.
  bool add(const std::vector<long long>& input) {
    std::vector<Wide> v(input.begin(), input.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const int p = pivots_[k];
      if (v[p] == 0) continue;
      const Wide a = basis_[k][p];
      const Wide c = v[p];
      for (int i = 0; i < dim_; ++i) {
        Wide lhs = 0;
        Wide rhs = 0;
        if (__builtin_mul_overflow(a, v[i], &lhs) || __builtin_mul_overflow(c, basis_[k][i], &rhs)) {
          throw Error(ErrorCode::EnumerationLimit, "integer overflow while ranking traces");
        }
        v[i] = lhs - rhs;
      }
      normalise(v);
    }
    const auto it = std::find_if(v.begin(), v.end(), [](Wide x) { return x != 0; });
    if (it == v.end()) return false;
    pivots_.push_back(static_cast<int>(it - v.begin()));
    basis_.push_back(std::move(v));
    return true;
  }

  int rank() const noexcept { return static_cast<int>(basis_.size()); }

 private:
  static Wide abs128(Wide x) { return x < 0 ? -x : x; }

  static void normalise(std::vector<Wide>& v) {
    Wide g = 0;
    for (Wide x : v) {
      Wide a = abs128(x);
      while (a != 0) {
        const Wide t = g % a;
        g = a;
        a = t;
      }
    }
    if (g > 1) {
      for (Wide& x : v) x /= g;
    }
  }

  int dim_;
  std::vector<std::vector<Wide>> basis_;
  std::vector<int> pivots_;
};

struct StateHash {
  std::size_t operator()(const std::vector<std::uint16_t>& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint16_t x : s) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Breadth-first over (current vertex, visit counts) states. `on_trace` sees
// each distinct completed trace once and may return false to stop early.
void for_each_proper_trace(const Graph& g, int length_cap,
                           const std::function<bool(const Trace&)>& on_trace) {
  const int n = g.size();
  const Vertex out = g.v_out();
  const auto& dist = g.distances_to_out();
  if (length_cap > 65000) throw Error(ErrorCode::EnumerationLimit, "length cap too large");

  // state layout: counts[0..n), current vertex at index n
  using State = std::vector<std::uint16_t>;
  std::vector<State> layer;
  State start(n + 1, 0);
  start[g.v_in()] = 1;
  start[n] = static_cast<std::uint16_t>(g.v_in());
  layer.push_back(start);

  std::set<Trace> emitted;
  for (int length = 0; length < length_cap && !layer.empty(); ++length) {
    std::unordered_set<State, StateHash> next;
    std::vector<State> ordered_next;
    for (const State& s : layer) {
      const Vertex u = s[n];
      for (Vertex w : g.neighbors(u)) {
        if (w == out) {
          Trace tr(s.begin(), s.begin() + n);
          tr[out] = 1;
          if (emitted.insert(tr).second && !on_trace(tr)) return;
          continue;
        }
        if (length + 1 + dist[w] > length_cap) continue;
        State t = s;
        ++t[w];
        t[n] = static_cast<std::uint16_t>(w);
        if (next.insert(t).second) ordered_next.push_back(std::move(t));
      }
    }
    layer = std::move(ordered_next);
  }
}

std::vector<long long> difference(const Trace& a, const Trace& b) {
  std::vector<long long> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = static_cast<long long>(a[i]) - b[i];
  return d;
}

int floor_half(int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

}  // namespace

Trace trace_vector(const Graph& g, const WalkTrace& walk) { return trace_of(g, walk.vertices); }

std::vector<WalkTrace> enumerate_proper_walks(const Graph& g, int length_cap, std::size_t max_walks) {
  const Vertex out = g.v_out();
  const auto& dist = g.distances_to_out();
  if (length_cap < dist[g.v_in()]) {
    throw Error(ErrorCode::CapTooSmall, "cap " + std::to_string(length_cap) + " is below d(v_in, v_out) = " +
                                            std::to_string(dist[g.v_in()]));
  }
  std::vector<WalkTrace> walks;
  std::vector<Vertex> path{g.v_in()};
  std::function<void()> extend = [&]() {
    const int steps = static_cast<int>(path.size()) - 1;
    for (Vertex w : g.neighbors(path.back())) {
      if (steps + 1 + dist[w] > length_cap) continue;
      path.push_back(w);
      if (w == out) {
        if (walks.size() == max_walks) {
          throw Error(ErrorCode::EnumerationLimit, "more than " + std::to_string(max_walks) + " proper walks");
        }
        walks.push_back(WalkTrace{path, trace_of(g, path)});
      } else {
        extend();
      }
      path.pop_back();
    }
  };
  extend();
  if (walks.empty()) throw Error(ErrorCode::CapTooSmall, "no proper walk within the cap");
  return walks;
}

std::vector<Trace> proper_traces(const Graph& g, int length_cap) {
  std::vector<Trace> traces;
  for_each_proper_trace(g, length_cap, [&](const Trace& tr) {
    traces.push_back(tr);
    return true;
  });
  std::sort(traces.begin(), traces.end());
  return traces;
}

int affine_dimension(const std::vector<Trace>& points) {
  if (points.empty()) return -1;
  IntegerRank rank(static_cast<int>(points.front().size()));
  for (std::size_t k = 1; k < points.size(); ++k) rank.add(difference(points[k], points.front()));
  return rank.rank();
}

int default_cap(const Graph& g) noexcept { return 4 * g.size(); }

TraceHull trace_hull(const Graph& g, int length_cap) {
  TraceHull hull;
  hull.cap = length_cap > 0 ? length_cap : default_cap(g);
  hull.generators = proper_traces(g, hull.cap);
  if (hull.generators.empty()) throw Error(ErrorCode::CapTooSmall, "no proper walk within the cap");
  hull.affine_dimension = affine_dimension(hull.generators);
  hull.bipartite = g.bipartite();
  return hull;
}

int hull_dimension(const Graph& g, int length_cap) {
  const int cap = length_cap > 0 ? length_cap : default_cap(g);
  const int ceiling = g.size() - 1;  // every trace has tr(v_out) = 1
  IntegerRank rank(g.size());
  Trace first;
  for_each_proper_trace(g, cap, [&](const Trace& tr) {
    if (first.empty()) {
      first = tr;
      return true;
    }
    rank.add(difference(tr, first));
    return rank.rank() < ceiling;
  });
  if (first.empty()) throw Error(ErrorCode::CapTooSmall, "no proper walk within the cap");
  return rank.rank();
}

namespace {

RelintResult relint_at_cap(const Graph& g, const Eigen::VectorXd& r, int cap) {
  const std::vector<Trace> gens = proper_traces(g, cap);
  if (gens.empty()) throw Error(ErrorCode::CapTooSmall, "no proper walk within the cap");
  const int n = g.size();
  const Vertex out = g.v_out();
  const auto count = static_cast<Eigen::Index>(gens.size());

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
  for (const Trace& tr : gens) {
    for (int v = 0; v < n; ++v) centroid[v] += tr[v];
  }
  centroid /= static_cast<double>(gens.size());

  // Columns: lambda_1..lambda_N, e, slack. Rows: one per vertex other than
  // v_out, sum(lambda) = 1, e + slack = 1.
  const Eigen::Index rows = n + 1;
  const Eigen::Index cols = count + 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  Eigen::Index row = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (v == out) continue;
    for (Eigen::Index k = 0; k < count; ++k) a(row, k) = gens[static_cast<std::size_t>(k)][v];
    a(row, count) = -(r[v] - centroid[v]);
    b[row] = r[v];
    ++row;
  }
  a.row(row).head(count).setOnes();
  b[row] = 1.0;
  ++row;
  a(row, count) = 1.0;
  a(row, count + 1) = 1.0;
  b[row] = 1.0;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  c[count] = -1.0;
  const lp::Result sol = lp::minimize(c, a, b);

  RelintResult res;
  res.cap_used = cap;
  res.generators = gens.size();
  res.bipartite = g.bipartite();
  res.hull_dim = affine_dimension(gens);
  if (sol.status == lp::Status::Infeasible) {
    res.verdict = HullVerdict::Outside;
    return res;
  }
  if (sol.status != lp::Status::Optimal) {
    throw Error(ErrorCode::EnumerationLimit, "hull membership LP did not reach an optimum");
  }
  res.certificate = sol.x[count];
  res.relint = res.certificate > 1e-9;
  res.verdict = res.relint ? HullVerdict::Interior : HullVerdict::Boundary;
  return res;
}

}  // namespace

RelintResult relint_membership(const Graph& g, const OccupationVector& r, int length_cap) {
  g.require_interior_connected();
  require_out_is_one(g, r);
  const int cap = length_cap > 0 ? length_cap : default_cap(g);
  RelintResult res = relint_at_cap(g, r.values, cap);
  if (!res.relint) res = relint_at_cap(g, r.values, 2 * cap);
  return res;
}

PathDecomposition path_decompose(const Graph& g, const OccupationVector& r) {
  PathDecomposition dec;
  dec.order = g.path_order();
  if (dec.order.empty()) {
    throw Error(ErrorCode::FamilyMismatch, "graph is not a path from v_out to v_in");
  }
  require_out_is_one(g, r);
  const int n = g.size();
  auto at = [&](int pos) { return r.values[dec.order[static_cast<std::size_t>(pos - 1)]]; };

  // alpha_j for j = 2..n-1, stored at index j - 2.
  dec.alphas.resize(std::max(0, n - 2));
  double prev = 0.0;
  for (int j = 2; j <= n - 1; ++j) {
    const double alpha = at(j) - 1.0 - prev;
    if (!(alpha > 0.0)) {
      throw Error(ErrorCode::NotInPsi, "alpha_" + std::to_string(j) + " = " + std::to_string(alpha) + " <= 0");
    }
    dec.alphas[j - 2] = alpha;
    prev = alpha;
  }
  const double last = at(n);
  if (std::abs(last - 1.0 - prev) > 1e-9 * std::max(1.0, std::abs(last))) {
    throw Error(ErrorCode::NotInPsi, "r(v_in) = " + std::to_string(last) + " but the decomposition needs " +
                                         std::to_string(1.0 + prev));
  }
  return dec;
}

WeightAssignment solve_path(const Graph& g, const OccupationVector& r) {
  const PathDecomposition dec = path_decompose(g, r);
  const int n = g.size();
  auto alpha = [&](int j) { return dec.alphas[j - 2]; };

  Eigen::VectorXd rho(n);
  for (int j = 1; j <= n; ++j) {
    double value = 1.0;
    if (j > 2) {
      for (int k = 0; k <= floor_half(j - 3); ++k) value *= alpha(j - 2 * k - 1);
      for (int k = 0; k <= floor_half(j - 4); ++k) value /= 1.0 + alpha(j - 2 * k - 2);
    }
    rho[dec.order[static_cast<std::size_t>(j - 1)]] = value;
  }
  verify_round_trip(g, rho, r.values, kPathRoundTripTol, "solve_path");
  return derived_weights(g, rho);
}

WeightAssignment solve_complete(const Graph& g, const OccupationVector& r) {
  if (!g.is_complete()) throw Error(ErrorCode::FamilyMismatch, "graph is not complete");
  require_out_is_one(g, r);
  const int n = g.size();
  const Vertex out = g.v_out();
  const Vertex in = g.v_in();
  const Eigen::VectorXd& rv = r.values;

  if (n == 2) {
    if (std::abs(rv[in] - 1.0) > 1e-9) throw Error(ErrorCode::NotInPsi, "single edge needs r = (1, 1)");
    return derived_weights(g, Eigen::VectorXd::Ones(2));
  }

  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v) {
    if (v != out && v != in) rest.push_back(v);
  }
  for (Vertex v : rest) {
    if (!(rv[v] > 0.0)) throw Error(ErrorCode::NotInPsi, "r(" + std::to_string(v) + ") must be positive");
  }
  Vertex top = rest.front();
  for (Vertex v : rest) {
    if (rv[v] > rv[top]) top = v;
  }
  double others = 0.0;
  for (Vertex v : rest) {
    if (v != top) others += rv[v];
  }
  const double lower = std::max(1.0, rv[top] - others);
  const double upper = 1.0 + rv[top] + others;
  if (!(rv[in] > lower && rv[in] < upper)) {
    throw Error(ErrorCode::NotInPsi, "r(v_in) = " + std::to_string(rv[in]) + " outside (" +
                                         std::to_string(lower) + ", " + std::to_string(upper) + ")");
  }

  // With beta on the unit simplex, every non-terminal vertex j satisfies
  // beta_j (1 - beta_j) = r_j beta_out. Writing the smaller root as
  // beta_j = q_j beta_out / 2 keeps everything finite as beta_out -> 0.
  auto q = [&](Vertex v, double b_out) {
    const double disc = std::max(0.0, 1.0 - 4.0 * rv[v] * b_out);
    return 4.0 * rv[v] / (1.0 + std::sqrt(disc));
  };
  // r(v_in) as a function of beta_out; `plus` puts `top` on the larger root.
  auto r_in_of = [&](double b_out, bool plus) {
    double sum_q = 0.0;
    for (Vertex v : rest) {
      if (!(plus && v == top)) sum_q += q(v, b_out);
    }
    if (!plus) return (2.0 - b_out * sum_q) * (2.0 + sum_q) / 4.0;
    const double qt = q(top, b_out);
    return (qt - sum_q) * (2.0 + b_out * (2.0 - qt + sum_q)) / 4.0;
  };

  const double hi_end = 1.0 / (4.0 * rv[top]);
  const double lo_end = hi_end * 1e-300;
  const double target = rv[in];
  auto residual = [&](double b_out, bool plus) { return r_in_of(b_out, plus) - target; };

  bool plus = false;
  double f_lo = residual(lo_end, false);
  double f_hi = residual(hi_end, false);
  if (f_lo * f_hi > 0.0) {
    plus = true;
    f_lo = residual(lo_end, true);
    f_hi = residual(hi_end, true);
    if (f_lo * f_hi > 0.0) {
      throw Error(ErrorCode::BracketFailure, "no sign change for beta_out; endpoint residuals " +
                                                 std::to_string(f_lo) + ", " + std::to_string(f_hi));
    }
  }

  double lo = lo_end;
  double hi = hi_end;
  double b_out = hi_end;
  if (f_hi != 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = residual(mid, plus);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-12 * hi && it >= 60) break;
    }
    b_out = 0.5 * (lo + hi);
  } else {
    plus = false;  // branch point: both roots coincide
  }

  Eigen::VectorXd beta(n);
  beta[out] = b_out;
  double used = b_out;
  for (Vertex v : rest) {
    const double smaller = 0.5 * q(v, b_out) * b_out;
    beta[v] = (plus && v == top) ? 1.0 - smaller : smaller;
    used += beta[v];
  }
  beta[in] = 1.0 - used;
  if (!(beta.minCoeff() > 0.0)) throw Error(ErrorCode::NotInPsi, "bisection produced a nonpositive weight");
  const Eigen::VectorXd rho = beta / beta[out];
  verify_round_trip(g, rho, rv, kRoundTripTol, "solve_complete");
  return derived_weights(g, rho);
}

double pendant_weight(double anchor_rho_star, double alpha, double r_anchor) {
  if (!(alpha > 0.0) || !(alpha < r_anchor)) {
    throw Error(ErrorCode::AlphaOutOfRange, "need 0 < alpha < r(v); alpha = " + std::to_string(alpha) +
                                                ", r(v) = " + std::to_string(r_anchor));
  }
  return anchor_rho_star * alpha / (r_anchor - alpha);
}

PendantExtension extend_pendant(const Graph& g, const WeightAssignment& w, Vertex v, double alpha,
                                const OccupationVector& r) {
  if (v < 0 || v >= g.size()) throw Error(ErrorCode::VertexOutOfRange, "pendant anchor");
  if (r.values.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "target size");
  const double leaf = pendant_weight(w.rho_star[v], alpha, r.values[v]);
  Graph extended = attach_pendant(g, v);
  Eigen::VectorXd rho(g.size() + 1);
  rho.head(g.size()) = w.rho;
  rho[g.size()] = leaf;
  Eigen::VectorXd target(g.size() + 1);
  target.head(g.size()) = r.values;
  target[g.size()] = alpha;
  verify_round_trip(extended, rho, target, kPathRoundTripTol, "extend_pendant");
  WeightAssignment weights = derived_weights(extended, rho);
  return PendantExtension{std::move(extended), std::move(weights)};
}

TwinReduction reduce_twins(const Graph& g, const OccupationVector& r, Vertex v, Vertex w) {
  const int n = g.size();
  if (v < 0 || w < 0 || v >= n || w >= n) throw Error(ErrorCode::VertexOutOfRange, "twin ids");
  if (r.values.size() != n) throw Error(ErrorCode::DimensionMismatch, "target size");
  if (v == w || v == g.v_in() || v == g.v_out() || w == g.v_in() || w == g.v_out() ||
      g.adjacent(v, w) || g.neighbors(v) != g.neighbors(w)) {
    throw Error(ErrorCode::NotTwins, std::to_string(v) + " and " + std::to_string(w) +
                                         " are not non-adjacent interior vertices with equal neighbourhoods");
  }
  const double total = r.values[v] + r.values[w];
  if (!(r.values[v] > 0.0) || !(r.values[w] > 0.0)) {
    throw Error(ErrorCode::NotInPsi, "twin targets must be positive");
  }
  std::vector<Vertex> keep;
  for (Vertex u = 0; u < n; ++u) {
    if (u != w) keep.push_back(u);
  }
  TwinReduction red{induced_subgraph(g, keep), {}, v, w, r.values[v] / total};
  red.reduced_r.values.resize(n - 1);
  for (int c = 0; c < n - 1; ++c) red.reduced_r.values[c] = r.values[red.reduced.to_parent[c]];
  const auto kept_child = std::find(red.reduced.to_parent.begin(), red.reduced.to_parent.end(), v) -
                          red.reduced.to_parent.begin();
  red.reduced_r.values[kept_child] = total;
  return red;
}

Eigen::VectorXd split_twins(const Graph& g, const TwinReduction& reduction,
                            const Eigen::VectorXd& reduced_rho) {
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(g.size());
  for (std::size_t c = 0; c < reduction.reduced.to_parent.size(); ++c) {
    rho[reduction.reduced.to_parent[c]] = reduced_rho[static_cast<Eigen::Index>(c)];
  }
  const double merged = rho[reduction.kept];
  rho[reduction.kept] = reduction.split * merged;
  rho[reduction.merged] = (1.0 - reduction.split) * merged;
  return rho;
}

namespace {

Eigen::VectorXd solve_reducible_rec(const Graph& g, const Eigen::VectorXd& r, const std::string& stage) {
  const OccupationVector target{r, OccupationKind::Expected};
  auto with_stage = [&](auto&& solve) {
    try {
      return solve();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotInPsi) throw Error(ErrorCode::NotInPsi, stage + ": " + e.what());
      throw;
    }
  };

  if (!g.path_order().empty()) return with_stage([&] { return solve_path(g, target).rho; });
  if (g.is_complete()) return with_stage([&] { return solve_complete(g, target).rho; });

  const int n = g.size();
  const auto& dist = g.distances_to_out();

  Vertex pendant = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (v == g.v_in() || v == g.v_out() || g.degree(v) != 1) continue;
    if (pendant < 0 || dist[v] > dist[pendant]) pendant = v;
  }
  if (pendant >= 0) {
    const Vertex anchor = g.neighbors(pendant).front();
    const double alpha = r[pendant];
    if (!(alpha > 0.0) || !(r[anchor] - alpha > 0.0)) {
      throw Error(ErrorCode::NotInPsi, stage + ": pendant " + std::to_string(pendant) +
                                           " needs 0 < r(pendant) < r(anchor)");
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n; ++v) {
      if (v != pendant) keep.push_back(v);
    }
    const Subgraph sub = induced_subgraph(g, keep);
    Eigen::VectorXd sub_r(n - 1);
    for (int c = 0; c < n - 1; ++c) sub_r[c] = r[sub.to_parent[c]];
    const auto anchor_child = static_cast<int>(
        std::find(sub.to_parent.begin(), sub.to_parent.end(), anchor) - sub.to_parent.begin());
    sub_r[anchor_child] -= alpha;

    const Eigen::VectorXd sub_rho =
        solve_reducible_rec(sub.graph, sub_r, stage + " > strip pendant " + std::to_string(pendant));
    Eigen::VectorXd rho(n);
    double anchor_star = 0.0;
    for (int c = 0; c < n - 1; ++c) rho[sub.to_parent[c]] = sub_rho[c];
    for (Vertex u : sub.graph.neighbors(anchor_child)) anchor_star += sub_rho[u];
    rho[pendant] = pendant_weight(anchor_star, alpha, r[anchor]);
    return rho;
  }

  for (Vertex v = 0; v < n; ++v) {
    if (v == g.v_in() || v == g.v_out()) continue;
    for (Vertex w = v + 1; w < n; ++w) {
      if (w == g.v_in() || w == g.v_out() || g.adjacent(v, w) || g.neighbors(v) != g.neighbors(w)) continue;
      const TwinReduction red = with_stage([&] {
        return reduce_twins(g, OccupationVector{r, OccupationKind::Expected}, v, w);
      });
      const Eigen::VectorXd sub_rho = solve_reducible_rec(
          red.reduced.graph, red.reduced_r.values,
          stage + " > merge twins " + std::to_string(v) + "," + std::to_string(w));
      return split_twins(g, red, sub_rho);
    }
  }
  throw Error(ErrorCode::Irreducible, stage + ": no pendant or twin reduction applies and the graph is "
                                              "neither a v_out-v_in path nor complete");
}

}  // namespace

WeightAssignment solve_reducible(const Graph& g, const OccupationVector& r) {
  g.require_interior_connected();
  require_out_is_one(g, r);
  const Eigen::VectorXd rho = pin_out(g, solve_reducible_rec(g, r.values, "root"));
  verify_round_trip(g, rho, r.values, kRoundTripTol, "solve_reducible");
  return derived_weights(g, rho);
}

}  // namespace rwinv
