#pragma once

#include <Eigen/Core>

#include "zonemv/discretize.hpp"
#include "zonemv/network.hpp"

namespace zonemv {

/// Sampled scenario history on a TimeGrid with K steps and n zones.
struct Trajectory {
  TimeGrid grid;
  Eigen::MatrixXd temps;           // (K + 1) x n, °C
  Eigen::MatrixXd powers;          // K x n, kW, piecewise constant
  Eigen::MatrixXd gains;           // K x n, kW, piecewise constant
  Eigen::VectorXd outdoor;         // K, °C, piecewise constant
  Eigen::MatrixXd temp_integrals;  // K x n, °C h: exact integral of T_i over step k

  int zones() const { return static_cast<int>(temps.cols()); }
  int steps() const { return grid.steps; }
};

/// Response of a DiscreteModel's free zones to piecewise-constant inputs.
struct StepResponse {
  Eigen::MatrixXd temps;      // (K + 1) x nf
  Eigen::MatrixXd integrals;  // K x nf
};

/// Propagates the free zones of `model`. `boundary` is K x nb in the order of
/// model.boundary_nodes.
StepResponse propagate(const DiscreteModel& model, const Eigen::VectorXd& initial,
                       const Eigen::MatrixXd& q, const Eigen::MatrixXd& w,
                       const Eigen::MatrixXd& boundary);

/// Forward simulation of the full network (`model` from discretize()).
Trajectory simulate(const DiscreteModel& model, const TimeGrid& grid,
                    const Eigen::VectorXd& initial, const Eigen::MatrixXd& q,
                    const Eigen::MatrixXd& w, const Eigen::VectorXd& outdoor);

/// Checks shapes of `traj` against its own grid; throws GridMismatch.
void check_shape(const Trajectory& traj);
/// Throws GridMismatch unless both trajectories share grid and zone count.
void check_compatible(const Trajectory& a, const Trajectory& b);

/// Exact integral of price(t) * (T_i^a(t) - T_i^b(t)) over the horizon for
/// a piecewise-constant price.
double weighted_integral(const Trajectory& a, const Trajectory& b,
                         const Eigen::VectorXd& price, int zone);

enum class StieltjesMode {
  kPriceTimesIncrement,  // sum_k a(k) (x(k+1) - x(k))
  kStateTimesPriceJump,  // -sum over breakpoints of (a_after - a_before) x(breakpoint)
};

/// Integral of the piecewise-constant price against the temperature
/// difference x = T^a - T^b of one zone, in either of the two summation
/// orders. The two differ by exactly boundary_term(), so they agree whenever
/// x(0) = x(K) = 0.
double stieltjes_integral(const Trajectory& a, const Trajectory& b,
                          const Eigen::VectorXd& price, int zone, StieltjesMode mode);

/// a(tau) x(tau) - a(0) x(0) for one zone.
double boundary_term(const Trajectory& a, const Trajectory& b, const Eigen::VectorXd& price,
                     int zone);

}  // namespace zonemv
