#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rwinv/graph.hpp"
#include "rwinv/occupation.hpp"
#include "rwinv/spectral.hpp"

namespace rwinv {

/// Fixed: rho += eta * (-grad). Backtracking: Armijo search from eta on
/// every iteration. Spectral: Armijo search started from the
/// Barzilai-Borwein length <s, s> / <s, y> of the previous step.
enum class StepRule { Fixed, Backtracking, Spectral };
enum class GradientMode { Analytic, FiniteDifference };

struct ReconstructionConfig {
  int max_iters = 10'000;
  double cost_tol = 1e-6;
  StepRule step_rule = StepRule::Spectral;
  /// Fixed step, or the first trial step of a line search.
  double eta = 0.1;
  double shrink = 0.5;
  double armijo_c = 1e-4;
  double positivity_floor = 1e-8;
  GradientMode gradient_mode = GradientMode::Analytic;
  /// Relative central-difference step used in FiniteDifference mode.
  double fd_step = 1e-5;
};

/// d/drho(x) of every intermediate quantity in the occupation-time pipeline.
struct WeightDerivatives {
  Vertex x = 0;
  Eigen::VectorXd d_tilde_rho;  // also the diagonal of dT
  double d_vol = 0.0;
  Eigen::MatrixXd d_normalized_laplacian;
  Eigen::VectorXd phi0;
  Eigen::VectorXd d_phi0;
  Eigen::MatrixXd d_projector;
  Eigen::MatrixXd d_scriptG;  // filled by green_derivative
  Eigen::MatrixXd d_bigG;     // filled by green_derivative
};

/// Derivatives of tilde_rho, vol, T, the normalized Laplacian, phi_0 and
/// P = phi_0 phi_0^T with respect to rho(x).
WeightDerivatives weight_jacobians(const Graph& g, const WeightAssignment& w, Vertex x);

/// Completes `d` with dscriptG (pseudoinverse derivative) and dG.
void green_derivative(const WeightAssignment& w, const SpectralData& spec, WeightDerivatives& d);

/// dG/drho(x).
Eigen::MatrixXd green_derivative(const Graph& g, const WeightAssignment& w, const SpectralData& spec,
                                 Vertex x);

/// Vertices with tau_hat > 0. Throws SupportMismatch when they miss v_in or
/// v_out or do not induce a connected subgraph, DimensionMismatch when the
/// length is wrong, InvalidInput on negative entries.
std::vector<Vertex> support_of(const Graph& g, const OccupationVector& tau_hat);

/// ||tau_hat - tau_rho||^2 with tau_rho from the fixed-point solve.
double cost(const Graph& g, const WeightAssignment& w, const OccupationVector& tau_hat);

struct GradientReport {
  double cost = 0.0;
  Eigen::VectorXd tau;                // tau_rho
  std::vector<Vertex> free_vertices;  // every vertex but v_out
  Eigen::VectorXd gradient;           // aligned with free_vertices
  std::vector<WeightDerivatives> derivatives;  // analytic mode only
};

/// Gradient of the cost with respect to rho(x), x != v_out.
GradientReport occupation_gradient(const Graph& g, const WeightAssignment& w,
                                   const OccupationVector& tau_hat,
                                   GradientMode mode = GradientMode::Analytic, double fd_step = 1e-5);

/// Central differences of cost() with step fd_step * max(1, rho(x)).
Eigen::VectorXd finite_difference_gradient(const Graph& g, const WeightAssignment& w,
                                           const OccupationVector& tau_hat, double fd_step = 1e-5);

/// max_x |a_x - b_x| / max(||b||_inf, 1e-300).
double max_relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct IterationRecord {
  int iter = 0;
  double cost = 0.0;
  double step = 0.0;
};

enum class ReconstructionStatus { Converged, MaxIters, NoDescent };

struct ReconstructionResult {
  ReconstructionStatus status = ReconstructionStatus::MaxIters;
  Subgraph support;
  /// Weights on the support subgraph, rho(v_out) = 1.
  WeightAssignment weights;
  /// rho indexed by the original vertex ids, 0 off the support.
  Eigen::VectorXd rho_full;
  std::vector<IterationRecord> log;
  double final_cost = 0.0;
  /// Number of coordinate projections onto the positivity floor.
  int floor_events = 0;
};

/// Steepest descent on the cost from uniform weights over supp(tau_hat).
ReconstructionResult reconstruct_weights(const Graph& g, const OccupationVector& tau_hat,
                                         const ReconstructionConfig& cfg = {});

/// Pearson correlation between rho(v) and d(v, v_out). Throws ZeroVariance.
double expertise_correlation(const Graph& g, const WeightAssignment& w);

}  // namespace rwinv
