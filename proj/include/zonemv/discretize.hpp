#pragma once

#include <vector>

#include <Eigen/Core>

#include "zonemv/network.hpp"

namespace zonemv {

/// Exact zero-order-hold discretization of the zone dynamics
///
///   C_i dT_i/dt = sum_j alpha_ij (T_j - T_i) + q_i + w_i
///
/// restricted to a set of free zones. Every other node (the outdoor air and
/// any pinned zone) enters as a boundary temperature held constant over each
/// step. For the full network the boundary is the outdoor node alone.
///
/// One step maps
///   T(k+1)          = phi  T(k) + gamma_q  q(k) + gamma_w  w(k) + gamma_0  b(k)
///   int_step T dt   = iphi T(k) + igamma_q q(k) + igamma_w w(k) + igamma_0 b(k)
/// where b(k) lists the boundary temperatures in `boundary_nodes` order.
struct DiscreteModel {
  double dt_h = 0.0;
  std::vector<int> free_zones;      // zero-based zone indices, ascending
  std::vector<int> boundary_nodes;  // node ids (0 = outdoor, zone i = i + 1)

  Eigen::MatrixXd phi;
  Eigen::MatrixXd gamma_q;
  Eigen::MatrixXd gamma_w;
  Eigen::MatrixXd gamma_0;

  Eigen::MatrixXd iphi;
  Eigen::MatrixXd igamma_q;
  Eigen::MatrixXd igamma_w;
  Eigen::MatrixXd igamma_0;

  int free_count() const { return static_cast<int>(free_zones.size()); }
  int boundary_count() const { return static_cast<int>(boundary_nodes.size()); }
};

/// Continuous-time state matrix of the free-zone subsystem.
Eigen::MatrixXd state_matrix(const ThermalNetwork& net, const std::vector<int>& free_zones);

/// Discretizes the whole network; the only boundary node is the outdoor air.
DiscreteModel discretize(const ThermalNetwork& net, const TimeGrid& grid);

/// Discretizes the subsystem of `free_zones`; the outdoor node comes first in
/// `boundary_nodes`, followed by the remaining zones in ascending order.
DiscreteModel discretize_reduced(const ThermalNetwork& net, std::vector<int> free_zones,
                                 double dt_h);

}  // namespace zonemv
