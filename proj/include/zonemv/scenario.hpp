#pragma once

#include <vector>

#include <Eigen/Core>

#include "zonemv/discretize.hpp"
#include "zonemv/network.hpp"
#include "zonemv/trajectory.hpp"
#include "zonemv/weather.hpp"

namespace zonemv {

/// Baseline setpoints for every zone plus the zones handed to the advanced
/// controller. Zone indices are zero-based.
struct SetpointPlan {
  Eigen::VectorXd setpoints;  // °C, one per zone
  std::vector<int> controlled;

  void validate(int zones) const;
  std::vector<int> uncontrolled(int zones) const;
  bool is_controlled(int zone) const;
};

/// Piecewise-constant thermal power that holds `tracked` zones on the
/// temperatures recorded in `traj`. Uses traj.temps, traj.temp_integrals,
/// traj.gains and traj.outdoor; per step
///
///   q_i = [C_i (T_i(k+1) - T_i(k)) + sum_j alpha_ij int (T_i - T_j)] / dt - w_i
///
/// so that the step cost a(k) q_i(k) dt equals the integral of the
/// continuous tracking power. Returns K x tracked.size().
Eigen::MatrixXd tracking_power(const ThermalNetwork& net, const Trajectory& traj,
                               const std::vector<int>& tracked);

/// All zones held at their setpoints by ideal trackers.
Trajectory run_baseline(const ThermalNetwork& net, const SetpointPlan& plan,
                        const WeatherSeries& weather, const Eigen::MatrixXd& gains);

/// Controlled zones driven open loop by `controlled_q` (K x m, columns in
/// plan.controlled order); the other zones stay on their setpoints and draw
/// whatever power that takes.
Trajectory run_experiment(const ThermalNetwork& net, const SetpointPlan& plan,
                          const WeatherSeries& weather, const Eigen::MatrixXd& gains,
                          const Eigen::MatrixXd& controlled_q);

/// Rebuilds traj.temp_integrals from sampled temperatures and inputs,
/// treating `free_zones` as ZOH-driven and every other zone as held at its
/// step-start sample. Used for trajectories read back from disk.
void recompute_step_integrals(const ThermalNetwork& net, const std::vector<int>& free_zones,
                              Trajectory& traj);

}  // namespace zonemv
