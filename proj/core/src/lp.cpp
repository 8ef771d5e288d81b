#include "rwinv/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rwinv/error.hpp"

namespace rwinv::lp {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-10;
constexpr double kPivotTol = 1e-11;
constexpr int kRefactorEvery = 50;
constexpr int kDegenerateBeforeBland = 50;

// Columns [0, n) are structural, [n, n + m) artificial.
class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : m_(a.rows()), n_(a.cols()), a_(m_, n_ + m_), b_(b) {
    a_.leftCols(n_) = a;
    a_.rightCols(m_).setIdentity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (b_[i] < 0.0) {
        a_.row(i).head(n_) *= -1.0;
        b_[i] = -b_[i];
      }
    }
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, -1);
    for (Eigen::Index i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = static_cast<int>(i);
    }
    refactor();
  }

  // Returns false on unboundedness.
  bool run(const Eigen::VectorXd& cost, bool allow_artificial, int max_iters, int& iterations) {
    int degenerate = 0;
    while (iterations < max_iters) {
      if (iterations % kRefactorEvery == 0) refactor();
      Eigen::VectorXd c_basis(m_);
      for (Eigen::Index i = 0; i < m_; ++i) c_basis[i] = cost[basis_[i]];
      const Eigen::RowVectorXd y = c_basis.transpose() * binv_;
      const Eigen::Index limit = allow_artificial ? n_ + m_ : n_;
      const bool bland = degenerate >= kDegenerateBeforeBland;

      Eigen::Index entering = -1;
      double best = -kOptTol;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (in_basis_[j] >= 0) continue;
        const double reduced = cost[j] - y.dot(a_.col(j));
        if (reduced < best) {
          entering = j;
          if (bland) break;
          best = reduced;
        }
      }
      if (entering < 0) return true;

      const Eigen::VectorXd u = binv_ * a_.col(entering);
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (u[i] <= kPivotTol) continue;
        const double r = std::max(0.0, x_basis_[i]) / u[i];
        const bool tie = leave >= 0 && std::abs(r - ratio) <= 1e-14;
        if (leave < 0 || r < ratio - 1e-14 || (tie && basis_[i] < basis_[leave])) {
          leave = i;
          ratio = r;
        }
      }
      if (leave < 0) return false;
      degenerate = ratio <= kFeasTol ? degenerate + 1 : 0;
      pivot(leave, entering, u);
      ++iterations;
    }
    return true;
  }

  // After phase one: swap zero-level artificials out where some structural
  // column can replace them.
  void evict_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      const Eigen::RowVectorXd row = binv_.row(i);
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (in_basis_[j] >= 0) continue;
        if (std::abs(row.dot(a_.col(j))) > 1e-7) {
          pivot(i, j, binv_ * a_.col(j));
          break;
        }
      }
    }
  }

  double objective(const Eigen::VectorXd& cost) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) total += cost[basis_[i]] * x_basis_[i];
    return total;
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, x_basis_[i]);
    }
    return x;
  }

  Eigen::Index rows() const { return m_; }
  Eigen::Index structural() const { return n_; }

 private:
  void refactor() {
    Eigen::MatrixXd basis_matrix(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) basis_matrix.col(i) = a_.col(basis_[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "simplex basis became singular");
    binv_ = lu.inverse();
    x_basis_ = binv_ * b_;
  }

  void pivot(Eigen::Index leave, Eigen::Index entering, const Eigen::VectorXd& u) {
    const double pivot_value = u[leave];
    binv_.row(leave) /= pivot_value;
    x_basis_[leave] /= pivot_value;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == leave || u[i] == 0.0) continue;
      binv_.row(i) -= u[i] * binv_.row(leave);
      x_basis_[i] -= u[i] * x_basis_[leave];
    }
    in_basis_[basis_[leave]] = -1;
    basis_[leave] = entering;
    in_basis_[entering] = static_cast<int>(leave);
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::vector<Eigen::Index> basis_;
  std::vector<int> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd x_basis_;
};

}  // namespace

Result minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                int max_iters) {
  if (c.size() != a.cols() || b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "LP data sizes disagree");
  }
  Simplex simplex(a, b);
  const Eigen::Index n = a.cols();
  const Eigen::Index m = a.rows();
  Result result;

  Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(n + m);
  phase_one.tail(m).setOnes();
  simplex.run(phase_one, true, max_iters, result.iterations);
  if (result.iterations >= max_iters) {
    result.status = Status::IterationLimit;
    return result;
  }
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (simplex.objective(phase_one) > kFeasTol * scale) {
    result.status = Status::Infeasible;
    return result;
  }
  simplex.evict_artificials();

  Eigen::VectorXd phase_two = Eigen::VectorXd::Zero(n + m);
  phase_two.head(n) = c;
  if (!simplex.run(phase_two, false, max_iters, result.iterations)) {
    result.status = Status::Unbounded;
    return result;
  }
  result.status = result.iterations >= max_iters ? Status::IterationLimit : Status::Optimal;
  result.x = simplex.solution();
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace rwinv::lp
