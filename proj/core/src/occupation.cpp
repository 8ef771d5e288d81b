#include "rwinv/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "rwinv/error.hpp"

namespace rwinv {
namespace {

// Cumulative transition probabilities laid out per vertex, aligned with
// Graph::neighbors().
class StepTable {
 public:
  StepTable(const Graph& g, const WeightAssignment& w) : g_(g), cumulative_(g.size()) {
    for (Vertex x = 0; x < g.size(); ++x) {
      double acc = 0.0;
      for (Vertex y : g.neighbors(x)) {
        acc += w.rho[y] / w.rho_star[x];
        cumulative_[x].push_back(acc);
      }
    }
  }

  Vertex step(Vertex x, WalkRng& rng) const {
    const double u = uniform01(rng);
    const auto& cum = cumulative_[x];
    const auto& nbrs = g_.neighbors(x);
    for (std::size_t i = 0; i + 1 < cum.size(); ++i) {
      if (u < cum[i]) return nbrs[i];
    }
    return nbrs.back();
  }

 private:
  const Graph& g_;
  std::vector<std::vector<double>> cumulative_;
};

template <typename OnVisit>
void run_walk(const Graph& g, const StepTable& table, WalkRng& rng, std::uint64_t step_limit,
              OnVisit&& on_visit) {
  Vertex x = g.v_in();
  on_visit(x);
  std::uint64_t steps = 0;
  while (x != g.v_out()) {
    if (steps == step_limit) {
      throw Error(ErrorCode::StepLimitExceeded,
                  "walk did not reach v_out within " + std::to_string(step_limit) + " steps");
    }
    x = table.step(x, rng);
    ++steps;
    on_visit(x);
  }
}

}  // namespace

bool WalkTrace::proper(const Graph& g) const {
  if (vertices.empty() || vertices.front() != g.v_in() || vertices.back() != g.v_out()) return false;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (vertices[i] == g.v_out() || !g.adjacent(vertices[i], vertices[i + 1])) return false;
  }
  return trace == trace_of(g, vertices);
}

std::vector<int> trace_of(const Graph& g, const std::vector<Vertex>& vertices) {
  std::vector<int> tr(g.size(), 0);
  for (Vertex v : vertices) ++tr.at(v);
  return tr;
}

Eigen::MatrixXd occupation_matrix(const Graph& g, const WeightAssignment& w) {
  const int n = g.size();
  const Vertex out = g.v_out();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(out, out) = 1.0;
  m(g.v_in(), out) = 1.0;
  for (Vertex v = 0; v < n; ++v) {
    if (v == out) continue;
    for (Vertex u : g.neighbors(v)) {
      if (u != out) m(v, u) = w.rho[v] / w.rho_star[u];
    }
  }
  return m;
}

OccupationVector expected_occupation_fixed_point(const Graph& g, const WeightAssignment& w) {
  const int n = g.size();
  const Vertex out = g.v_out();
  Eigen::MatrixXd system = occupation_matrix(g, w) - Eigen::MatrixXd::Identity(n, n);
  system.row(out).setZero();
  system(out, out) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[out] = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd r = lu.solve(rhs);
  const double residual = (system * r - rhs).cwiseAbs().maxCoeff();
  const double scale = system.cwiseAbs().maxCoeff() * std::max(1.0, r.cwiseAbs().maxCoeff());
  if (!r.allFinite() || residual > 1e-8 * scale) {
    throw Error(ErrorCode::SingularSystem, "pinned fixed-point system is singular");
  }
  return OccupationVector{std::move(r), OccupationKind::Expected};
}

SpectralData spectral_data(const Graph& g, const WeightAssignment& w) {
  const Laplacians lap = laplacians(g, w);
  SpectralData spec = eigendecompose(lap.normalized);
  greens_functions(spec, lap.t_diag);
  return spec;
}

OccupationVector expected_occupation_green(const Graph& g, const WeightAssignment& w,
                                           const SpectralData& spec) {
  const int n = g.size();
  const Vertex o = g.v_out();
  const Vertex i = g.v_in();
  const auto& G = spec.bigG;
  const auto& t = w.tilde_rho;
  if (G.rows() != n) throw Error(ErrorCode::DimensionMismatch, "Green's matrix size");
  const double base = G(o, o) / t[o] - G(i, o) / t[i];
  Eigen::VectorXd tau(n);
  for (Vertex x = 0; x < n; ++x) {
    tau[x] = t[x] * (base - G(o, x) / t[o] + G(i, x) / t[i]);
  }
  // The formula counts visits strictly before absorption; the terminal visit
  // is counted everywhere else in the library.
  tau[o] = 1.0;
  return OccupationVector{std::move(tau), OccupationKind::Expected};
}

double expected_hitting_time(const Graph& g, const WeightAssignment& w, const SpectralData& spec,
                             Vertex x, Vertex y) {
  if (x < 0 || y < 0 || x >= g.size() || y >= g.size()) {
    throw Error(ErrorCode::VertexOutOfRange, "hitting time endpoints");
  }
  if (x == y) return 0.0;
  const auto& G = spec.bigG;
  return w.vol / w.tilde_rho[y] * G(y, y) - w.vol / w.tilde_rho[x] * G(x, y);
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  // splitmix64 finaliser over (seed, index)
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(WalkRng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

WalkTrace simulate_walk(const Graph& g, const WeightAssignment& w, WalkRng& rng,
                        std::uint64_t step_limit) {
  const StepTable table(g, w);
  WalkTrace walk;
  walk.trace.assign(g.size(), 0);
  run_walk(g, table, rng, step_limit, [&](Vertex v) {
    walk.vertices.push_back(v);
    ++walk.trace[v];
  });
  return walk;
}

EmpiricalOccupation empirical_occupation(const Graph& g, const WeightAssignment& w,
                                         const MonteCarloOptions& opts) {
  if (opts.walks == 0) throw Error(ErrorCode::InvalidInput, "need at least one walk");
  const int n = g.size();
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(opts.workers, 1, opts.walks));
  const StepTable table(g, w);

  struct Partial {
    std::vector<std::uint64_t> sum;
    std::vector<std::uint64_t> sum_sq;
    std::exception_ptr error;
  };
  std::vector<Partial> partials(workers);

  auto work = [&](unsigned id) {
    Partial& part = partials[id];
    part.sum.assign(n, 0);
    part.sum_sq.assign(n, 0);
    const std::uint64_t begin = opts.walks * id / workers;
    const std::uint64_t end = opts.walks * (id + 1) / workers;
    std::vector<std::uint64_t> counts(n);
    try {
      for (std::uint64_t k = begin; k < end; ++k) {
        WalkRng rng(substream_seed(opts.seed, k));
        std::fill(counts.begin(), counts.end(), 0);
        run_walk(g, table, rng, opts.step_limit, [&](Vertex v) { ++counts[v]; });
        for (int v = 0; v < n; ++v) {
          part.sum[v] += counts[v];
          part.sum_sq[v] += counts[v] * counts[v];
        }
      }
    } catch (...) {
      part.error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
  }

  std::vector<std::uint64_t> sum(n, 0);
  std::vector<std::uint64_t> sum_sq(n, 0);
  for (const Partial& part : partials) {
    if (part.error) std::rethrow_exception(part.error);
    for (int v = 0; v < n; ++v) {
      sum[v] += part.sum[v];
      sum_sq[v] += part.sum_sq[v];
    }
  }

  const auto count = static_cast<long double>(opts.walks);
  EmpiricalOccupation result;
  result.walks = opts.walks;
  result.mean.kind = OccupationKind::Empirical;
  result.mean.values.resize(n);
  result.standard_error = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v) {
    const long double mean = static_cast<long double>(sum[v]) / count;
    result.mean.values[v] = static_cast<double>(mean);
    if (opts.walks > 1) {
      const long double ss = static_cast<long double>(sum_sq[v]) - count * mean * mean;
      const long double var = std::max<long double>(0.0L, ss / (count - 1.0L));
      result.standard_error[v] = static_cast<double>(std::sqrt(var / count));
    }
  }
  return result;
}

}  // namespace rwinv
