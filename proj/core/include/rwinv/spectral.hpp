#pragma once

#include <Eigen/Dense>

namespace rwinv {

/// Eigenpairs of the normalized Laplacian together with the two discrete
/// Green's function matrices built from them.
///
/// `scriptG` is the pseudoinverse of the normalized Laplacian,
///   scriptG = sum_{i>=1} phi_i phi_i^T / lambda_i,
/// and `bigG` = T^{1/2} scriptG T^{-1/2} with T = diag(tilde_rho).
struct SpectralData {
  Eigen::VectorXd eigenvalues;   // nondecreasing
  Eigen::MatrixXd eigenvectors;  // column i is phi_i
  Eigen::MatrixXd scriptG;
  Eigen::MatrixXd bigG;
};

/// |lambda| <= null_threshold(lambda_max) counts as a zero eigenvalue.
double null_threshold(double lambda_max) noexcept;

/// Symmetric eigendecomposition; each eigenvector is sign-fixed so that its
/// largest-magnitude entry is positive. Throws NotSymmetric / EigenFailure.
/// The Green's matrices are left empty.
SpectralData eigendecompose(const Eigen::MatrixXd& normalized_laplacian);

/// Fills scriptG and bigG. Throws ZeroEigenvalueAmbiguous unless exactly one
/// eigenvalue is below the null threshold.
void greens_functions(SpectralData& spec, const Eigen::VectorXd& t_diag);

/// Derivative of the pseudoinverse A of a symmetric matrix B along a
/// constant-rank path:  A' = -(P' + A B') A - A P',
/// where P is the projector onto the null space of B.
Eigen::MatrixXd pseudoinverse_derivative(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b_prime,
                                         const Eigen::MatrixXd& p, const Eigen::MatrixXd& p_prime);

}  // namespace rwinv
