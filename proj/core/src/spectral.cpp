#include "rwinv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwinv/error.hpp"

namespace rwinv {

double null_threshold(double lambda_max) noexcept {
  return 1e-9 * std::max(1.0, lambda_max);
}

SpectralData eigendecompose(const Eigen::MatrixXd& normalized_laplacian) {
  const auto& m = normalized_laplacian;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "expected a nonempty square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "normalized Laplacian is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "self-adjoint eigensolver did not converge");
  }
  SpectralData spec;
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < spec.eigenvectors.cols(); ++i) {
    Eigen::Index arg = 0;
    spec.eigenvectors.col(i).cwiseAbs().maxCoeff(&arg);
    if (spec.eigenvectors(arg, i) < 0.0) spec.eigenvectors.col(i) *= -1.0;
  }
  return spec;
}

void greens_functions(SpectralData& spec, const Eigen::VectorXd& t_diag) {
  const Eigen::Index n = spec.eigenvalues.size();
  if (t_diag.size() != n || spec.eigenvectors.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "T and eigenbasis disagree in size");
  }
  const double thr = null_threshold(spec.eigenvalues[n - 1]);
  Eigen::Index zeros = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(spec.eigenvalues[i]) <= thr) ++zeros;
  }
  if (zeros != 1) {
    throw Error(ErrorCode::ZeroEigenvalueAmbiguous,
                std::to_string(zeros) + " eigenvalues below " + std::to_string(thr));
  }
  // Eigenvalues come sorted, so the null eigenvalue is index 0.
  spec.scriptG = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    const auto phi = spec.eigenvectors.col(i);
    spec.scriptG.noalias() += (phi * phi.transpose()) / spec.eigenvalues[i];
  }
  const Eigen::VectorXd sqrt_t = t_diag.cwiseSqrt();
  spec.bigG = sqrt_t.asDiagonal() * spec.scriptG * sqrt_t.cwiseInverse().asDiagonal();
}

Eigen::MatrixXd pseudoinverse_derivative(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b_prime,
                                         const Eigen::MatrixXd& p, const Eigen::MatrixXd& p_prime) {
  const Eigen::Index n = a.rows();
  auto square = [n](const Eigen::MatrixXd& m) { return m.rows() == n && m.cols() == n; };
  if (!square(a) || !square(b_prime) || !square(p) || !square(p_prime)) {
    throw Error(ErrorCode::DimensionMismatch, "pseudoinverse_derivative needs four n x n matrices");
  }
  return -(p_prime + a * b_prime) * a - a * p_prime;
}

}  // namespace rwinv
