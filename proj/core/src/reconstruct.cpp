#include "rwinv/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rwinv/error.hpp"

namespace rwinv {

WeightDerivatives weight_jacobians(const Graph& g, const WeightAssignment& w, Vertex x) {
  const int n = g.size();
  if (x < 0 || x >= n) throw Error(ErrorCode::VertexOutOfRange, "derivative vertex");
  const auto& rho = w.rho;
  const auto& t = w.tilde_rho;

  WeightDerivatives d;
  d.x = x;
  d.d_tilde_rho = Eigen::VectorXd::Zero(n);
  d.d_tilde_rho[x] = w.rho_star[x];
  for (Vertex y : g.neighbors(x)) d.d_tilde_rho[y] = rho[y];
  d.d_vol = 2.0 * w.rho_star[x];

  // Off-diagonal entries are -rho(y)rho(z)/sqrt(t(y)t(z)); the diagonal is
  // identically 1 and has zero derivative.
  d.d_normalized_laplacian = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const Vertex y = e.a;
    const Vertex z = e.b;
    const double s = std::sqrt(t[y] * t[z]);
    const double d_num = (y == x ? rho[z] : 0.0) + (z == x ? rho[y] : 0.0);
    const double d_s = (t[y] * d.d_tilde_rho[z] + t[z] * d.d_tilde_rho[y]) / (2.0 * s);
    const double d_ratio = (s * d_num - rho[y] * rho[z] * d_s) / (t[y] * t[z]);
    d.d_normalized_laplacian(y, z) = -d_ratio;
    d.d_normalized_laplacian(z, y) = -d_ratio;
  }

  d.phi0 = (t / w.vol).cwiseSqrt();
  d.d_phi0.resize(n);
  for (Vertex y = 0; y < n; ++y) {
    const double d_ratio = (w.vol * d.d_tilde_rho[y] - t[y] * d.d_vol) / (w.vol * w.vol);
    d.d_phi0[y] = d_ratio / (2.0 * d.phi0[y]);
  }
  d.d_projector = d.d_phi0 * d.phi0.transpose() + d.phi0 * d.d_phi0.transpose();
  return d;
}

void green_derivative(const WeightAssignment& w, const SpectralData& spec, WeightDerivatives& d) {
  const Eigen::MatrixXd projector = d.phi0 * d.phi0.transpose();
  d.d_scriptG =
      pseudoinverse_derivative(spec.scriptG, d.d_normalized_laplacian, projector, d.d_projector);
  const Eigen::VectorXd& t = w.tilde_rho;
  const Eigen::VectorXd sqrt_t = t.cwiseSqrt();
  const Eigen::VectorXd dt_over_t = d.d_tilde_rho.cwiseQuotient(t);
  d.d_bigG = 0.5 * dt_over_t.asDiagonal() * spec.bigG +
             sqrt_t.asDiagonal() * d.d_scriptG * sqrt_t.cwiseInverse().asDiagonal() -
             0.5 * spec.bigG * dt_over_t.asDiagonal();
}

Eigen::MatrixXd green_derivative(const Graph& g, const WeightAssignment& w, const SpectralData& spec,
                                 Vertex x) {
  WeightDerivatives d = weight_jacobians(g, w, x);
  green_derivative(w, spec, d);
  return d.d_bigG;
}

std::vector<Vertex> support_of(const Graph& g, const OccupationVector& tau_hat) {
  const int n = g.size();
  if (tau_hat.values.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "occupation vector has " +
                                                  std::to_string(tau_hat.values.size()) +
                                                  " entries for " + std::to_string(n) + " vertices");
  }
  std::vector<Vertex> support;
  for (Vertex v = 0; v < n; ++v) {
    const double value = tau_hat.values[v];
    if (!std::isfinite(value) || value < 0.0) {
      throw Error(ErrorCode::InvalidInput, "occupation entry " + std::to_string(v) + " is negative");
    }
    if (value > 0.0) support.push_back(v);
  }
  if (tau_hat.values[g.v_in()] <= 0.0 || tau_hat.values[g.v_out()] <= 0.0) {
    throw Error(ErrorCode::SupportMismatch, "support must contain v_in and v_out");
  }
  if (static_cast<int>(support.size()) < n) {
    try {
      (void)induced_subgraph(g, support);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Disconnected) {
        throw Error(ErrorCode::SupportMismatch, "support of the occupation vector is disconnected");
      }
      throw;
    }
  }
  return support;
}

double cost(const Graph& g, const WeightAssignment& w, const OccupationVector& tau_hat) {
  (void)support_of(g, tau_hat);
  const OccupationVector tau = expected_occupation_fixed_point(g, w);
  return (tau_hat.values - tau.values).squaredNorm();
}

namespace {

double cost_at(const Graph& g, const Eigen::VectorXd& rho, const OccupationVector& tau_hat) {
  const WeightAssignment w = derived_weights(g, rho);
  return (tau_hat.values - expected_occupation_fixed_point(g, w).values).squaredNorm();
}

// Infinite when the trial point is numerically degenerate, so the line
// search shrinks past it.
double trial_cost(const Graph& g, const Eigen::VectorXd& rho, const OccupationVector& tau_hat) {
  try {
    return cost_at(g, rho, tau_hat);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularSystem) return std::numeric_limits<double>::infinity();
    throw;
  }
}

std::vector<Vertex> free_vertices_of(const Graph& g) {
  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (v != g.v_out()) free.push_back(v);
  }
  return free;
}

// d tau(y) / d rho(x) for every y, from the Green's-function form
//   tau(y) = t(y) [G(o,o)/t(o) - G(i,o)/t(i) - G(o,y)/t(o) + G(i,y)/t(i)].
Eigen::VectorXd occupation_derivative(const Graph& g, const WeightAssignment& w,
                                      const SpectralData& spec, const WeightDerivatives& d) {
  const int n = g.size();
  const Vertex o = g.v_out();
  const Vertex i = g.v_in();
  const auto& t = w.tilde_rho;
  const auto& dt = d.d_tilde_rho;
  const auto& G = spec.bigG;
  const auto& dG = d.d_bigG;

  // d/drho(x) of t(y) G(a,b) / t(a), by the quotient rule.
  auto term = [&](Vertex y, Vertex a, Vertex b) {
    return (t[a] * dt[y] - t[y] * dt[a]) / (t[a] * t[a]) * G(a, b) + t[y] / t[a] * dG(a, b);
  };
  Eigen::VectorXd dtau = Eigen::VectorXd::Zero(n);
  for (Vertex y = 0; y < n; ++y) {
    if (y == o) continue;
    dtau[y] = term(y, o, o) - term(y, i, o) - term(y, o, y) + term(y, i, y);
  }
  return dtau;
}

}  // namespace

Eigen::VectorXd finite_difference_gradient(const Graph& g, const WeightAssignment& w,
                                           const OccupationVector& tau_hat, double fd_step) {
  const std::vector<Vertex> free = free_vertices_of(g);
  Eigen::VectorXd grad(static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Vertex x = free[k];
    const double h = std::min(fd_step * std::max(1.0, w.rho[x]), 0.5 * w.rho[x]);
    Eigen::VectorXd plus = w.rho;
    Eigen::VectorXd minus = w.rho;
    plus[x] += h;
    minus[x] -= h;
    grad[static_cast<Eigen::Index>(k)] =
        (cost_at(g, plus, tau_hat) - cost_at(g, minus, tau_hat)) / (2.0 * h);
  }
  return grad;
}

GradientReport occupation_gradient(const Graph& g, const WeightAssignment& w,
                                   const OccupationVector& tau_hat, GradientMode mode,
                                   double fd_step) {
  (void)support_of(g, tau_hat);
  GradientReport report;
  report.tau = expected_occupation_fixed_point(g, w).values;
  const Eigen::VectorXd residual = report.tau - tau_hat.values;
  report.cost = residual.squaredNorm();
  report.free_vertices = free_vertices_of(g);

  if (mode == GradientMode::FiniteDifference) {
    report.gradient = finite_difference_gradient(g, w, tau_hat, fd_step);
    return report;
  }

  const SpectralData spec = spectral_data(g, w);
  report.gradient.resize(static_cast<Eigen::Index>(report.free_vertices.size()));
  report.derivatives.reserve(report.free_vertices.size());
  for (std::size_t k = 0; k < report.free_vertices.size(); ++k) {
    WeightDerivatives d = weight_jacobians(g, w, report.free_vertices[k]);
    green_derivative(w, spec, d);
    report.gradient[static_cast<Eigen::Index>(k)] =
        2.0 * residual.dot(occupation_derivative(g, w, spec, d));
    report.derivatives.push_back(std::move(d));
  }
  return report;
}

double max_relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "gradient sizes differ");
  if (a.size() == 0) return 0.0;
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

ReconstructionResult reconstruct_weights(const Graph& g, const OccupationVector& tau_hat,
                                         const ReconstructionConfig& cfg) {
  if (cfg.max_iters < 0 || !(cfg.cost_tol > 0.0) || !(cfg.positivity_floor > 0.0) ||
      !(cfg.eta > 0.0) || !(cfg.shrink > 0.0 && cfg.shrink < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "reconstruction config out of range");
  }
  const std::vector<Vertex> support = support_of(g, tau_hat);

  ReconstructionResult result;
  result.support = induced_subgraph(g, support);
  const Graph& sub = result.support.graph;
  OccupationVector target{Eigen::VectorXd(sub.size()), tau_hat.kind};
  for (int v = 0; v < sub.size(); ++v) target.values[v] = tau_hat.values[result.support.to_parent[v]];

  Eigen::VectorXd rho = Eigen::VectorXd::Ones(sub.size());
  const Vertex out = sub.v_out();

  auto project = [&](Eigen::VectorXd& candidate) {
    int events = 0;
    for (int v = 0; v < candidate.size(); ++v) {
      if (v == out) continue;
      if (candidate[v] < cfg.positivity_floor) {
        candidate[v] = cfg.positivity_floor;
        ++events;
      }
    }
    return events;
  };

  double last_step = 0.0;
  Eigen::VectorXd prev_rho;
  Eigen::VectorXd prev_direction;
  for (int iter = 0;; ++iter) {
    const WeightAssignment w = derived_weights(sub, rho);
    const GradientReport report = occupation_gradient(sub, w, target, cfg.gradient_mode, cfg.fd_step);
    result.log.push_back({iter, report.cost, last_step});
    result.final_cost = report.cost;
    if (report.cost <= cfg.cost_tol) {
      result.status = ReconstructionStatus::Converged;
      break;
    }
    if (iter >= cfg.max_iters) {
      result.status = ReconstructionStatus::MaxIters;
      break;
    }

    Eigen::VectorXd direction = Eigen::VectorXd::Zero(sub.size());
    for (std::size_t k = 0; k < report.free_vertices.size(); ++k) {
      direction[report.free_vertices[k]] = -report.gradient[static_cast<Eigen::Index>(k)];
    }

    if (cfg.step_rule == StepRule::Fixed) {
      Eigen::VectorXd next = rho + cfg.eta * direction;
      result.floor_events += project(next);
      rho = next;
      last_step = cfg.eta;
      continue;
    }

    double first = cfg.eta;
    if (cfg.step_rule == StepRule::Spectral && prev_rho.size() > 0) {
      const Eigen::VectorXd s = rho - prev_rho;
      const double sy = -s.dot(direction - prev_direction);
      if (sy > 0.0) first = std::clamp(s.squaredNorm() / sy, 1e-12 * cfg.eta, 1e12 * cfg.eta);
    }
    prev_rho = rho;
    prev_direction = direction;

    bool accepted = false;
    for (double eta = first; eta >= 1e-18 * first; eta *= cfg.shrink) {
      Eigen::VectorXd trial = rho + eta * direction;
      const int events = project(trial);
      // Armijo condition on the projected step.
      const double predicted = direction.dot(trial - rho);
      if (trial_cost(sub, trial, target) <= report.cost - cfg.armijo_c * predicted) {
        result.floor_events += events;
        rho = trial;
        last_step = eta;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.status = ReconstructionStatus::NoDescent;
      break;
    }
  }

  result.weights = derived_weights(sub, rho);
  result.rho_full = Eigen::VectorXd::Zero(g.size());
  for (int v = 0; v < sub.size(); ++v) result.rho_full[result.support.to_parent[v]] = rho[v];
  return result;
}

double expertise_correlation(const Graph& g, const WeightAssignment& w) {
  const int n = g.size();
  const auto& dist = g.distances_to_out();
  Eigen::VectorXd d(n);
  for (int v = 0; v < n; ++v) d[v] = dist[v];
  const Eigen::VectorXd rc = w.rho.array() - w.rho.mean();
  const Eigen::VectorXd dc = d.array() - d.mean();
  const double srr = rc.squaredNorm();
  const double sdd = dc.squaredNorm();
  if (srr <= 1e-24 * std::max(1.0, w.rho.squaredNorm()) || sdd == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "correlation undefined for constant weights or distances");
  }
  return std::clamp(rc.dot(dc) / std::sqrt(srr * sdd), -1.0, 1.0);
}

}  // namespace rwinv
