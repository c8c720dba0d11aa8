#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace zonemv::lp {

/// minimize cost' x  subject to  constraints x = rhs,  lower <= x <= upper.
/// Bounds may be infinite.
struct LpProblem {
  Eigen::VectorXd cost;
  Eigen::SparseMatrix<double> constraints;  // rows x variables, column major
  Eigen::VectorXd rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<std::string> names;  // optional, one per variable

  int variables() const { return static_cast<int>(cost.size()); }
  int rows() const { return static_cast<int>(rhs.size()); }

  /// Throws std::invalid_argument on inconsistent dimensions or non-finite
  /// cost/matrix/rhs entries. Crossed bounds are left to the solver, which
  /// reports them as infeasibility.
  void validate() const;
};

}  // namespace zonemv::lp
