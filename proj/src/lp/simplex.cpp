#include "zonemv/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/LU>

namespace zonemv::lp {

void LpProblem::validate() const {
  const auto n = cost.size();
  if (constraints.cols() != n || constraints.rows() != rhs.size()) {
    throw std::invalid_argument("constraint matrix does not match cost and rhs sizes");
  }
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("bounds must have one entry per variable");
  }
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != n) {
    throw std::invalid_argument("names must have one entry per variable");
  }
  if (!cost.allFinite() || !rhs.allFinite()) {
    throw std::invalid_argument("cost and rhs must be finite");
  }
  for (Eigen::Index j = 0; j < constraints.outerSize(); ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(constraints, j); it; ++it) {
      if (!std::isfinite(it.value())) throw std::invalid_argument("non-finite constraint entry");
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) == inf || upper(j) == -inf) {
      throw std::invalid_argument("invalid bound on variable " + std::to_string(j));
    }
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

double KktResiduals::worst() const { return std::max({primal, dual, complementarity}); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kDegenerateFallback = 50;

enum class VarState : std::uint8_t { kBasic, kLower, kUpper, kFree };

double inf_norm(const Eigen::VectorXd& v) { return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0; }

// y'b - sup { y'Ax : lower <= x <= upper }. Components of A'y below
// round-off carry no information about the bounds and are skipped.
double certificate_gap(const LpProblem& p, const Eigen::VectorXd& ray) {
  const Eigen::VectorXd g = p.constraints.transpose() * ray;
  const double noise = 1e-12 * (1.0 + inf_norm(ray));
  double gap = ray.dot(p.rhs);
  for (int j = 0; j < p.variables(); ++j) {
    if (g(j) > noise) {
      gap -= g(j) * p.upper(j);
    } else if (g(j) < -noise) {
      gap -= g(j) * p.lower(j);
    }
  }
  return gap;
}

class Simplex {
 public:
  Simplex(const LpProblem& p, const SolveOptions& o)
      : p_(p),
        opt_(o),
        n_(p.variables()),
        m_(p.rows()),
        total_(n_ + m_),
        lo_(total_),
        up_(total_),
        x_(Eigen::VectorXd::Zero(total_)),
        state_(total_, VarState::kLower),
        basis_(m_),
        art_sign_(m_) {}

  LpSolution run();

 private:
  enum class Outcome { kProgress, kOptimal, kUnbounded };

  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(p_.constraints, j); it; ++it) {
        f(static_cast<int>(it.row()), it.value());
      }
    } else {
      f(j - n_, art_sign_(j - n_));
    }
  }

  double dot_column(const Eigen::VectorXd& y, int j) const {
    double s = 0.0;
    for_column(j, [&](int r, double v) { s += y(r) * v; });
    return s;
  }

  bool fixed(int j) const { return lo_(j) == up_(j); }

  void place_nonbasic(int j);
  void refactor();
  Outcome iterate(const Eigen::VectorXd& c);
  Outcome optimize(const Eigen::VectorXd& c, LpSolution& sol);
  void drive_out_artificials();
  void finish(LpSolution& sol, const Eigen::VectorXd& c);

  const LpProblem& p_;
  SolveOptions opt_;
  int n_, m_, total_;
  Eigen::VectorXd lo_, up_, x_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  Eigen::VectorXd art_sign_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd y_;
  double dual_tol_ = 1e-10;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int degenerate_run_ = 0;
};

void Simplex::place_nonbasic(int j) {
  if (std::isfinite(lo_(j))) {
    state_[j] = VarState::kLower;
    x_(j) = lo_(j);
  } else if (std::isfinite(up_(j))) {
    state_[j] = VarState::kUpper;
    x_(j) = up_(j);
  } else {
    state_[j] = VarState::kFree;
    x_(j) = 0.0;
  }
}

void Simplex::refactor() {
  since_refactor_ = 0;
  if (m_ == 0) return;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
  for (int r = 0; r < m_; ++r) {
    for_column(basis_[r], [&](int row, double v) { b(row, r) = v; });
  }
  binv_ = b.partialPivLu().inverse();
  Eigen::VectorXd resid = p_.rhs;
  for (int j = 0; j < total_; ++j) {
    if (state_[j] != VarState::kBasic && x_(j) != 0.0) {
      const double xj = x_(j);
      for_column(j, [&](int r, double v) { resid(r) -= v * xj; });
    }
  }
  const Eigen::VectorXd xb = binv_ * resid;
  for (int r = 0; r < m_; ++r) x_(basis_[r]) = xb(r);
}

Simplex::Outcome Simplex::iterate(const Eigen::VectorXd& c) {
  if (since_refactor_ >= opt_.refactor_interval) refactor();

  Eigen::VectorXd cb(m_);
  for (int r = 0; r < m_; ++r) cb(r) = c(basis_[r]);
  y_ = m_ > 0 ? Eigen::VectorXd(binv_.transpose() * cb) : Eigen::VectorXd();

  const bool bland =
      opt_.pricing == PricingRule::kBland || degenerate_run_ >= kDegenerateFallback;

  int enter = -1;
  double enter_d = 0.0;
  for (int j = 0; j < total_; ++j) {
    if (state_[j] == VarState::kBasic || fixed(j)) continue;
    const double d = c(j) - (m_ > 0 ? dot_column(y_, j) : 0.0);
    const bool eligible = (state_[j] == VarState::kLower && d < -dual_tol_) ||
                          (state_[j] == VarState::kUpper && d > dual_tol_) ||
                          (state_[j] == VarState::kFree && std::abs(d) > dual_tol_);
    if (!eligible) continue;
    if (bland) {
      enter = j;
      enter_d = d;
      break;
    }
    if (enter < 0 || std::abs(d) > std::abs(enter_d)) {
      enter = j;
      enter_d = d;
    }
  }
  if (enter < 0) return Outcome::kOptimal;

  const double dir = enter_d < 0.0 ? 1.0 : -1.0;
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
  for_column(enter, [&](int r, double v) { alpha += v * binv_.col(r); });

  // Basic variable r moves by delta(r) per unit step of the entering one.
  const Eigen::VectorXd delta = -dir * alpha;
  double theta = kInf;
  for (int r = 0; r < m_; ++r) {
    const int b = basis_[r];
    double t = kInf;
    if (delta(r) < -kPivotTol && std::isfinite(lo_(b))) {
      t = (x_(b) - lo_(b)) / -delta(r);
    } else if (delta(r) > kPivotTol && std::isfinite(up_(b))) {
      t = (up_(b) - x_(b)) / delta(r);
    }
    theta = std::min(theta, std::max(t, 0.0));
  }
  const double flip = up_(enter) - lo_(enter);
  if (!std::isfinite(theta) && !std::isfinite(flip)) return Outcome::kUnbounded;

  int leave_row = -1;
  if (theta < flip) {
    const double slack = 1e-12 * std::max(1.0, theta);
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[r];
      double t = kInf;
      if (delta(r) < -kPivotTol && std::isfinite(lo_(b))) {
        t = (x_(b) - lo_(b)) / -delta(r);
      } else if (delta(r) > kPivotTol && std::isfinite(up_(b))) {
        t = (up_(b) - x_(b)) / delta(r);
      }
      if (std::max(t, 0.0) > theta + slack) continue;
      if (leave_row < 0) {
        leave_row = r;
      } else if (bland ? b < basis_[leave_row]
                       : std::abs(delta(r)) > std::abs(delta(leave_row))) {
        leave_row = r;
      }
    }
  } else {
    theta = flip;
  }

  degenerate_run_ = theta <= kPrimalTol ? degenerate_run_ + 1 : 0;
  ++iterations_;
  ++since_refactor_;

  x_(enter) += dir * theta;
  for (int r = 0; r < m_; ++r) x_(basis_[r]) += delta(r) * theta;

  if (leave_row < 0) {
    // Bound flip: the entering variable crossed its whole range.
    state_[enter] = dir > 0.0 ? VarState::kUpper : VarState::kLower;
    x_(enter) = dir > 0.0 ? up_(enter) : lo_(enter);
    return Outcome::kProgress;
  }

  const int leave = basis_[leave_row];
  const bool to_lower = delta(leave_row) < 0.0;
  state_[leave] = to_lower ? VarState::kLower : VarState::kUpper;
  x_(leave) = to_lower ? lo_(leave) : up_(leave);
  if (!std::isfinite(x_(leave))) place_nonbasic(leave);

  basis_[leave_row] = enter;
  state_[enter] = VarState::kBasic;

  const double pivot = alpha(leave_row);
  binv_.row(leave_row) /= pivot;
  const Eigen::RowVectorXd pivot_row = binv_.row(leave_row);
  for (int r = 0; r < m_; ++r) {
    if (r != leave_row && alpha(r) != 0.0) binv_.row(r) -= alpha(r) * pivot_row;
  }
  return Outcome::kProgress;
}

Simplex::Outcome Simplex::optimize(const Eigen::VectorXd& c, LpSolution& sol) {
  dual_tol_ = 1e-10 * std::max(1.0, inf_norm(c));
  degenerate_run_ = 0;
  while (iterations_ < opt_.max_iterations) {
    const auto outcome = iterate(c);
    if (outcome != Outcome::kProgress) return outcome;
  }
  sol.status = LpStatus::kIterationLimit;
  return Outcome::kProgress;
}

void Simplex::drive_out_artificials() {
  for (int r = 0; r < m_; ++r) {
    if (basis_[r] < n_) continue;
    int best = -1;
    double best_abs = 1e-7;
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      double v = 0.0;
      for_column(j, [&](int row, double a) { v += binv_(r, row) * a; });
      if (std::abs(v) > best_abs) {
        best_abs = std::abs(v);
        best = j;
      }
    }
    if (best < 0) continue;  // redundant row; its artificial stays basic at zero
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
    for_column(best, [&](int row, double v) { alpha += v * binv_.col(row); });
    const int art = basis_[r];
    place_nonbasic(art);
    basis_[r] = best;
    state_[best] = VarState::kBasic;
    binv_.row(r) /= alpha(r);
    const Eigen::RowVectorXd pivot_row = binv_.row(r);
    for (int s = 0; s < m_; ++s) {
      if (s != r && alpha(s) != 0.0) binv_.row(s) -= alpha(s) * pivot_row;
    }
  }
  refactor();
}

void Simplex::finish(LpSolution& sol, const Eigen::VectorXd& c) {
  refactor();
  Eigen::VectorXd cb(m_);
  for (int r = 0; r < m_; ++r) cb(r) = c(basis_[r]);
  sol.duals = m_ > 0 ? Eigen::VectorXd(binv_.transpose() * cb) : Eigen::VectorXd();
  sol.x = x_.head(n_);
  sol.reduced_costs = p_.cost - p_.constraints.transpose() * sol.duals;
  sol.objective = p_.cost.dot(sol.x);
  sol.kkt = kkt_residuals(p_, sol.x, sol.duals);
}

LpSolution Simplex::run() {
  LpSolution sol;
  for (int j = 0; j < n_; ++j) {
    if (p_.lower(j) > p_.upper(j)) {
      sol.status = LpStatus::kInfeasible;
      sol.certificate = InfeasibilityCertificate{Eigen::VectorXd::Zero(m_),
                                                 p_.lower(j) - p_.upper(j), j};
      sol.x = Eigen::VectorXd::Zero(n_);
      return sol;
    }
  }

  lo_.head(n_) = p_.lower;
  up_.head(n_) = p_.upper;
  lo_.tail(m_).setZero();
  up_.tail(m_).setConstant(kInf);
  for (int j = 0; j < n_; ++j) place_nonbasic(j);

  Eigen::VectorXd resid = p_.rhs - p_.constraints * x_.head(n_);
  for (int r = 0; r < m_; ++r) {
    art_sign_(r) = resid(r) < 0.0 ? -1.0 : 1.0;
    basis_[r] = n_ + r;
    state_[n_ + r] = VarState::kBasic;
    x_(n_ + r) = std::abs(resid(r));
  }
  binv_ = art_sign_.asDiagonal();

  // Phase 1: minimize the sum of artificials.
  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(total_);
  c1.tail(m_).setOnes();
  const auto phase1 = optimize(c1, sol);
  if (phase1 == Outcome::kProgress) {
    finish(sol, c1);
    sol.status = LpStatus::kIterationLimit;
    sol.iterations = iterations_;
    return sol;
  }
  refactor();
  const double infeasibility = x_.tail(m_).sum();
  if (infeasibility > kPrimalTol * (1.0 + inf_norm(p_.rhs))) {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = c1(basis_[r]);
    InfeasibilityCertificate cert;
    cert.ray = binv_.transpose() * cb;
    cert.gap = certificate_gap(p_, cert.ray);
    sol.status = LpStatus::kInfeasible;
    sol.certificate = std::move(cert);
    sol.x = x_.head(n_);
    sol.iterations = iterations_;
    return sol;
  }

  // Phase 2: artificials pinned at zero.
  drive_out_artificials();
  for (int r = 0; r < m_; ++r) {
    const int a = n_ + r;
    up_(a) = 0.0;
    if (state_[a] != VarState::kBasic) {
      state_[a] = VarState::kLower;
      x_(a) = 0.0;
    }
  }
  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(total_);
  c2.head(n_) = p_.cost;
  const auto phase2 = optimize(c2, sol);
  finish(sol, c2);
  sol.iterations = iterations_;
  if (phase2 == Outcome::kOptimal) {
    sol.status = LpStatus::kOptimal;
  } else if (phase2 == Outcome::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
  } else {
    sol.status = LpStatus::kIterationLimit;
  }
  return sol;
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SolveOptions& options) {
  problem.validate();
  Simplex simplex(problem, options);
  return simplex.run();
}

KktResiduals kkt_residuals(const LpProblem& problem, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& duals) {
  KktResiduals res;
  const int n = problem.variables();
  const Eigen::VectorXd ax = problem.constraints * x;
  double primal = inf_norm(ax - problem.rhs);
  for (int j = 0; j < n; ++j) {
    primal = std::max({primal, problem.lower(j) - x(j), x(j) - problem.upper(j)});
  }
  const double b_norm = inf_norm(problem.rhs);
  res.primal = primal / (1.0 + b_norm);

  const Eigen::VectorXd z = problem.cost - problem.constraints.transpose() * duals;
  double dual = 0.0;
  double comp = 0.0;
  for (int j = 0; j < n; ++j) {
    const double z_lower = std::max(z(j), 0.0);   // multiplier of x >= lower
    const double z_upper = std::max(-z(j), 0.0);  // multiplier of x <= upper
    if (!std::isfinite(problem.lower(j))) dual = std::max(dual, z_lower);
    if (!std::isfinite(problem.upper(j))) dual = std::max(dual, z_upper);
    if (std::isfinite(problem.lower(j))) {
      comp = std::max(comp, z_lower * std::abs(x(j) - problem.lower(j)));
    }
    if (std::isfinite(problem.upper(j))) {
      comp = std::max(comp, z_upper * std::abs(problem.upper(j) - x(j)));
    }
  }
  const double c_norm = inf_norm(problem.cost);
  res.dual = dual / (1.0 + c_norm);
  res.complementarity = comp / (1.0 + std::abs(problem.cost.dot(x)));
  return res;
}

bool verify_certificate(const LpProblem& problem, const InfeasibilityCertificate& cert,
                        double tol) {
  if (cert.conflicting_variable) {
    const int j = *cert.conflicting_variable;
    return j >= 0 && j < problem.variables() && problem.lower(j) > problem.upper(j);
  }
  if (cert.ray.size() != problem.rows()) return false;
  return certificate_gap(problem, cert.ray) > tol;
}

}  // namespace zonemv::lp
