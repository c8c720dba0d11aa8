#pragma once

#include <optional>

#include <Eigen/Core>

#include "zonemv/lp/problem.hpp"

namespace zonemv::lp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

enum class PricingRule {
  kBland,    // smallest eligible index enters, smallest index leaves on ties
  kDantzig,  // most negative reduced cost, falling back to Bland on degenerate stalls
};

struct SolveOptions {
  double tol = 1e-8;  // KKT acceptance tolerance on scaled residuals
  int max_iterations = 200000;
  PricingRule pricing = PricingRule::kBland;
  int refactor_interval = 50;
};

/// Scaled optimality residuals:
///   primal          = max(|Ax - b|, bound violation) / (1 + |b|_inf)
///   dual            = sign violation of z = c - A'y against the bounds / (1 + |c|_inf)
///   complementarity = max z_j * distance of x_j to the active bound / (1 + |c'x|)
struct KktResiduals {
  double primal = 0.0;
  double dual = 0.0;
  double complementarity = 0.0;

  double worst() const;
};

/// Farkas-type proof of infeasibility: y with  y'b > sup { y'Ax : l <= x <= u },
/// or a single variable whose bounds cross.
struct InfeasibilityCertificate {
  Eigen::VectorXd ray;  // y, one entry per row
  double gap = 0.0;     // y'b - sup y'Ax
  std::optional<int> conflicting_variable;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  Eigen::VectorXd duals;          // y, one per row
  Eigen::VectorXd reduced_costs;  // c - A'y
  double objective = 0.0;
  KktResiduals kkt;
  int iterations = 0;
  std::optional<InfeasibilityCertificate> certificate;
};

/// Dense bounded-variable revised simplex, two phases. Deterministic.
LpSolution solve_lp(const LpProblem& problem, const SolveOptions& options = {});

/// Residuals of (x, y) computed from the problem data alone.
KktResiduals kkt_residuals(const LpProblem& problem, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& duals);

/// Recomputes the certificate gap from the problem data; true when it proves
/// infeasibility with margin `tol`.
bool verify_certificate(const LpProblem& problem, const InfeasibilityCertificate& cert,
                        double tol = 1e-9);

}  // namespace zonemv::lp
