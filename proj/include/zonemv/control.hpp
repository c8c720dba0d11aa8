#pragma once

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "zonemv/discretize.hpp"
#include "zonemv/lp/simplex.hpp"
#include "zonemv/network.hpp"
#include "zonemv/scenario.hpp"

namespace zonemv {

/// Allowed deviation |T~_i(k) - setpoint_i| <= band(k) at every sample k = 0..K.
struct ComfortSchedule {
  Eigen::VectorXd band;  // K + 1 entries, °C

  /// `tight_c` at samples whose clock hour falls in one of the [start, end)
  /// windows, `wide_c` elsewhere.
  static ComfortSchedule from_windows(const TimeGrid& grid, double tight_c, double wide_c,
                                      const std::vector<std::pair<double, double>>& windows);
  /// 1 °C from 6 to 9 AM and 6 to 10 PM, 2 °C otherwise.
  static ComfortSchedule occupied_home(const TimeGrid& grid);
  static ComfortSchedule constant(const TimeGrid& grid, double band_c);

  void validate(const TimeGrid& grid) const;
};

/// Range of the controlled thermal power; heating-only by default.
struct PowerBounds {
  double lower_kw = 0.0;
  double upper_kw = std::numeric_limits<double>::infinity();
};

/// Variable layout: for controlled zone c (position in plan.controlled),
/// temperatures T~_c(0..K) come first, zone by zone, followed by the powers
/// q~_c(0..K-1). Rows: K dynamics rows per zone, then T~_c(0) and T~_c(K)
/// boundary rows per zone.
struct ControlLp {
  lp::LpProblem problem;
  DiscreteModel model;
  int controlled = 0;
  int steps = 0;

  int temp_var(int c, int k) const { return c * (steps + 1) + k; }
  int power_var(int c, int k) const { return controlled * (steps + 1) + c * steps + k; }
  int dynamics_row(int c, int k) const { return c * steps + k; }
  int boundary_row(int c, bool final) const { return controlled * steps + 2 * c + (final ? 1 : 0); }
};

/// Cost-minimizing LP for the controlled zones. The uncontrolled zones
/// enter the exact ZOH dynamics as constant boundary temperatures at their
/// setpoints. Objective: dt * sum_k sum_c price(k) q~_c(k).
ControlLp build_control_lp(const ThermalNetwork& net, const SetpointPlan& plan,
                           const TimeGrid& grid, const Eigen::VectorXd& price,
                           const ComfortSchedule& comfort, const Eigen::MatrixXd& gains,
                           const Eigen::VectorXd& outdoor, const PowerBounds& bounds = {});

/// The comfort schedule admits no control trajectory.
class InfeasibleControl : public std::runtime_error {
 public:
  InfeasibleControl(const std::string& what, int first_step, int last_step)
      : std::runtime_error(what), first_step_(first_step), last_step_(last_step) {}
  int first_step() const { return first_step_; }
  int last_step() const { return last_step_; }

 private:
  int first_step_;
  int last_step_;
};

struct ControlPlan {
  Eigen::MatrixXd powers;  // K x m, kW
  Eigen::MatrixXd temps;   // (K + 1) x m, °C
  double objective = 0.0;  // $
  lp::LpSolution solution;
};

/// Builds and solves the control LP. Throws InfeasibleControl with the step
/// window implicated by the infeasibility certificate, or std::runtime_error
/// when the solver stops without an optimum.
ControlPlan optimize_controlled_zones(const ThermalNetwork& net, const SetpointPlan& plan,
                                      const TimeGrid& grid, const Eigen::VectorXd& price,
                                      const ComfortSchedule& comfort,
                                      const Eigen::MatrixXd& gains,
                                      const Eigen::VectorXd& outdoor,
                                      const PowerBounds& bounds = {},
                                      const lp::SolveOptions& options = {});

}  // namespace zonemv
