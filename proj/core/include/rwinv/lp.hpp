#pragma once

#include <Eigen/Dense>

namespace rwinv::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase revised simplex for
///   minimize c^T x  subject to  A x = b,  x >= 0.
/// Sized for few rows and many columns (convex-hull membership problems).
Result minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                int max_iters = 200'000);

}  // namespace rwinv::lp
