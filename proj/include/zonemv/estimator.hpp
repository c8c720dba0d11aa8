#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "zonemv/network.hpp"
#include "zonemv/scenario.hpp"
#include "zonemv/trajectory.hpp"

namespace zonemv {

/// Linear cost c_i = a_i q_i + b_i. Both matrices are K x n.
struct CostModel {
  Eigen::MatrixXd price;   // $/kWh thermal
  Eigen::MatrixXd offset;  // $/h

  /// Same price in every zone, zero offsets.
  static CostModel uniform(const Eigen::VectorXd& price, int zones);
};

/// An uncontrolled zone's temperature moved between baseline and experiment.
class PerturbedUncontrolledZone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Max |T_i - T~_i| allowed in uncontrolled zones, °C.
inline constexpr double kUnperturbedTolerance = 1e-9;

struct ZoneSavings {
  int zone = 0;
  double baseline_cost = 0.0;    // integral of a q over the horizon, $
  double experiment_cost = 0.0;  // integral of a q~, $
  double savings = 0.0;          // baseline - experiment
};

struct SavingsReport {
  double naive_controlled = 0.0;
  double overestimation_error = 0.0;
  double corrected_form_a = 0.0;
  double corrected_form_b = 0.0;
  double oracle_true = 0.0;
  std::vector<ZoneSavings> per_zone;
  /// error / oracle; empty when the oracle is too small for a meaningful ratio.
  std::optional<double> relative_error;
  /// sum_i C_i [a_i(tau) x_i(tau) - a_i(0) x_i(0)] over controlled zones;
  /// form A minus form B.
  double boundary_term = 0.0;
  bool boundary_condition_met = true;
};

double per_zone_savings(const Trajectory& base, const Trajectory& exp, const CostModel& cost,
                        int zone);
double naive_savings(const Trajectory& base, const Trajectory& exp, const CostModel& cost,
                     const SetpointPlan& plan);
double oracle_true_savings(const Trajectory& base, const Trajectory& exp, const CostModel& cost);

/// sum_{i controlled} sum_{j uncontrolled} alpha_ij int a_j (T_i - T~_i) dt.
/// Throws PerturbedUncontrolledZone when an uncontrolled zone moved.
double overestimation_error(const Trajectory& base, const Trajectory& exp,
                            const ThermalNetwork& net, const CostModel& cost,
                            const SetpointPlan& plan);

enum class CorrectedForm {
  kA,  // capacitive term C_i int a_i dx_i
  kB,  // capacitive term -C_i int x_i da_i
};

struct CorrectedSavings {
  double usd = 0.0;
  double boundary_term = 0.0;  // as in SavingsReport
  bool boundary_condition_met = true;
};

/// Whole-building savings from controlled-zone temperatures alone.
CorrectedSavings corrected_savings(const Trajectory& base, const Trajectory& exp,
                                   const ThermalNetwork& net, const CostModel& cost,
                                   const SetpointPlan& plan, CorrectedForm form);

/// Every estimate plus the per-zone breakdown.
SavingsReport estimate_savings(const Trajectory& base, const Trajectory& exp,
                               const ThermalNetwork& net, const CostModel& cost,
                               const SetpointPlan& plan);

/// alpha_12 / alpha_10 for a two-zone building controlled in zone 1;
/// +infinity when alpha_10 = 0.
double two_zone_relative_error(const ThermalNetwork& net);

/// Wall data for the controlled zone: interior (shared) and exterior surfaces.
struct GeometryCase {
  double u_int = 0.0;  // kW/(°C m²)
  double u_ext = 0.0;
  double a_int = 0.0;  // m²
  double a_ext = 0.0;

  /// Box zone with a square footprint, adiabatic floor and ceiling and
  /// `exterior_walls` of its four walls facing outdoors; beta = u_int/u_ext.
  static GeometryCase square_footprint(int exterior_walls, double beta);
};

/// beta * gamma = (u_int a_int) / (u_ext a_ext); +infinity when the zone has
/// no exterior conductance.
double geometry_relative_error(const GeometryCase& g);

}  // namespace zonemv
