#include "zonemv/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zonemv/errors.hpp"

namespace zonemv {

CostModel CostModel::uniform(const Eigen::VectorXd& price, int zones) {
  return CostModel{price.replicate(1, zones), Eigen::MatrixXd::Zero(price.size(), zones)};
}

namespace {

void check_cost(const Trajectory& base, const Trajectory& exp, const CostModel& cost) {
  check_compatible(base, exp);
  if (cost.price.rows() != base.steps() || cost.price.cols() != base.zones()) {
    throw GridMismatch("price matrix must be steps x zones");
  }
}

double zone_cost(const Trajectory& traj, const CostModel& cost, int zone) {
  return traj.grid.dt_h * cost.price.col(zone).dot(traj.powers.col(zone));
}

void check_unperturbed(const Trajectory& base, const Trajectory& exp, const SetpointPlan& plan) {
  for (int j : plan.uncontrolled(base.zones())) {
    const double moved = (base.temps.col(j) - exp.temps.col(j)).cwiseAbs().maxCoeff();
    if (moved >= kUnperturbedTolerance) {
      throw PerturbedUncontrolledZone("uncontrolled zone " + std::to_string(j + 1) +
                                      " deviates from its baseline temperature by " +
                                      std::to_string(moved) + " °C");
    }
  }
}

void check_plan(const Trajectory& base, const SetpointPlan& plan) {
  for (int i : plan.controlled) {
    if (i < 0 || i >= base.zones()) throw std::out_of_range("controlled zone out of range");
  }
}

}  // namespace

double per_zone_savings(const Trajectory& base, const Trajectory& exp, const CostModel& cost,
                        int zone) {
  check_cost(base, exp, cost);
  if (zone < 0 || zone >= base.zones()) throw std::out_of_range("zone index out of range");
  const Eigen::VectorXd dq = base.powers.col(zone) - exp.powers.col(zone);
  return base.grid.dt_h * cost.price.col(zone).dot(dq);
}

double naive_savings(const Trajectory& base, const Trajectory& exp, const CostModel& cost,
                     const SetpointPlan& plan) {
  check_plan(base, plan);
  double s = 0.0;
  for (int i : plan.controlled) s += per_zone_savings(base, exp, cost, i);
  return s;
}

double oracle_true_savings(const Trajectory& base, const Trajectory& exp, const CostModel& cost) {
  double s = 0.0;
  for (int i = 0; i < base.zones(); ++i) s += per_zone_savings(base, exp, cost, i);
  return s;
}

double overestimation_error(const Trajectory& base, const Trajectory& exp,
                            const ThermalNetwork& net, const CostModel& cost,
                            const SetpointPlan& plan) {
  check_cost(base, exp, cost);
  check_plan(base, plan);
  check_unperturbed(base, exp, plan);
  double err = 0.0;
  for (int i : plan.controlled) {
    for (int j : plan.uncontrolled(base.zones())) {
      const double g = net.between(i, j);
      if (g != 0.0) err += g * weighted_integral(base, exp, cost.price.col(j), i);
    }
  }
  return err;
}

CorrectedSavings corrected_savings(const Trajectory& base, const Trajectory& exp,
                                   const ThermalNetwork& net, const CostModel& cost,
                                   const SetpointPlan& plan, CorrectedForm form) {
  check_cost(base, exp, cost);
  check_plan(base, plan);
  check_unperturbed(base, exp, plan);
  const int n = base.zones();
  const int steps = base.steps();
  CorrectedSavings out;
  for (int i : plan.controlled) {
    // Conductive weight per step: a_i alpha_i0 + sum_j alpha_ij (a_i - a_j).
    Eigen::VectorXd weight = net.to_outdoor(i) * cost.price.col(i);
    for (int j = 0; j < n; ++j) {
      if (j != i && net.between(i, j) != 0.0) {
        weight += net.between(i, j) * (cost.price.col(i) - cost.price.col(j));
      }
    }
    out.usd += weighted_integral(base, exp, weight, i);

    const Eigen::VectorXd a = cost.price.col(i);
    const auto mode = form == CorrectedForm::kA ? StieltjesMode::kPriceTimesIncrement
                                                : StieltjesMode::kStateTimesPriceJump;
    const double cap = net.capacitance(i);
    out.usd += cap * stieltjes_integral(base, exp, a, i, mode);
    out.boundary_term += cap * boundary_term(base, exp, a, i);

    const double x0 = base.temps(0, i) - exp.temps(0, i);
    const double xk = base.temps(steps, i) - exp.temps(steps, i);
    if (std::abs(x0) > kUnperturbedTolerance || std::abs(xk) > kUnperturbedTolerance) {
      out.boundary_condition_met = false;
    }
  }
  return out;
}

SavingsReport estimate_savings(const Trajectory& base, const Trajectory& exp,
                               const ThermalNetwork& net, const CostModel& cost,
                               const SetpointPlan& plan) {
  SavingsReport r;
  r.naive_controlled = naive_savings(base, exp, cost, plan);
  r.overestimation_error = overestimation_error(base, exp, net, cost, plan);
  const auto a = corrected_savings(base, exp, net, cost, plan, CorrectedForm::kA);
  const auto b = corrected_savings(base, exp, net, cost, plan, CorrectedForm::kB);
  r.corrected_form_a = a.usd;
  r.corrected_form_b = b.usd;
  r.boundary_term = a.boundary_term;
  r.boundary_condition_met = a.boundary_condition_met;
  r.oracle_true = oracle_true_savings(base, exp, cost);
  for (int i = 0; i < base.zones(); ++i) {
    ZoneSavings z;
    z.zone = i;
    z.baseline_cost = zone_cost(base, cost, i);
    z.experiment_cost = zone_cost(exp, cost, i);
    z.savings = per_zone_savings(base, exp, cost, i);
    r.per_zone.push_back(z);
  }
  const double floor = 1e-9 * std::max(std::abs(r.naive_controlled), 0.01);
  if (std::abs(r.oracle_true) >= floor) {
    r.relative_error = r.overestimation_error / r.oracle_true;
  }
  return r;
}

double two_zone_relative_error(const ThermalNetwork& net) {
  if (net.zones() != 2) throw std::invalid_argument("two-zone relative error needs n = 2");
  validate_network(net);
  const double coupling = net.between(0, 1);
  const double exterior = net.to_outdoor(0);
  if (exterior == 0.0) return std::numeric_limits<double>::infinity();
  return coupling / exterior;
}

GeometryCase GeometryCase::square_footprint(int exterior_walls, double beta) {
  if (exterior_walls < 0 || exterior_walls > 4) {
    throw std::invalid_argument("a square zone has between 0 and 4 exterior walls");
  }
  if (!(beta >= 0.0)) throw std::invalid_argument("insulation ratio must be nonnegative");
  // Unit wall area; only the ratios matter.
  return GeometryCase{beta, 1.0, static_cast<double>(4 - exterior_walls),
                      static_cast<double>(exterior_walls)};
}

double geometry_relative_error(const GeometryCase& g) {
  if (!(g.u_int >= 0.0 && g.u_ext >= 0.0 && g.a_int >= 0.0 && g.a_ext >= 0.0)) {
    throw std::invalid_argument("heat transfer coefficients and areas must be nonnegative");
  }
  const double exterior = g.u_ext * g.a_ext;
  if (exterior == 0.0) return std::numeric_limits<double>::infinity();
  return g.u_int * g.a_int / exterior;
}

}  // namespace zonemv
