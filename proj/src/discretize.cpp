#include "zonemv/discretize.hpp"

#include <algorithm>
#include <stdexcept>

#include "zonemv/matrix_exp.hpp"

namespace zonemv {

Eigen::MatrixXd state_matrix(const ThermalNetwork& net, const std::vector<int>& free_zones) {
  const int nf = static_cast<int>(free_zones.size());
  Eigen::MatrixXd a(nf, nf);
  for (int r = 0; r < nf; ++r) {
    const int i = free_zones[r];
    const double c = net.capacitance(i);
    for (int s = 0; s < nf; ++s) {
      a(r, s) = r == s ? -net.total_conductance(i) / c : net.between(i, free_zones[s]) / c;
    }
  }
  return a;
}

DiscreteModel discretize(const ThermalNetwork& net, const TimeGrid& grid) {
  validate_grid(grid);
  std::vector<int> all(net.zones());
  for (int i = 0; i < net.zones(); ++i) all[i] = i;
  return discretize_reduced(net, std::move(all), grid.dt_h);
}

DiscreteModel discretize_reduced(const ThermalNetwork& net, std::vector<int> free_zones,
                                 double dt_h) {
  validate_network(net);
  if (!(dt_h > 0.0)) throw std::invalid_argument("time step must be positive");
  std::sort(free_zones.begin(), free_zones.end());
  if (std::adjacent_find(free_zones.begin(), free_zones.end()) != free_zones.end()) {
    throw std::invalid_argument("duplicate free zone");
  }
  for (int z : free_zones) {
    if (z < 0 || z >= net.zones()) throw std::invalid_argument("free zone out of range");
  }

  DiscreteModel model;
  model.dt_h = dt_h;
  model.boundary_nodes.push_back(0);
  for (int i = 0; i < net.zones(); ++i) {
    if (!std::binary_search(free_zones.begin(), free_zones.end(), i)) {
      model.boundary_nodes.push_back(i + 1);
    }
  }
  model.free_zones = std::move(free_zones);

  const int nf = model.free_count();
  const int nb = model.boundary_count();
  const int ni = 2 * nf + nb;  // stacked inputs [q; w; b]

  Eigen::MatrixXd b_input = Eigen::MatrixXd::Zero(nf, ni);
  for (int r = 0; r < nf; ++r) {
    const int i = model.free_zones[r];
    const double c = net.capacitance(i);
    b_input(r, r) = 1.0 / c;
    b_input(r, nf + r) = 1.0 / c;
    for (int s = 0; s < nb; ++s) {
      b_input(r, 2 * nf + s) = net.conductance(i + 1, model.boundary_nodes[s]) / c;
    }
  }

  // d/dt [T; u; I] = [[A, B, 0], [0, 0, 0], [1, 0, 0]] [T; u; I] with u held
  // constant and I the running integral of T. One exponential yields every
  // transition and integral block.
  const int dim = nf + ni + nf;
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(dim, dim);
  aug.topLeftCorner(nf, nf) = state_matrix(net, model.free_zones);
  aug.block(0, nf, nf, ni) = b_input;
  aug.block(nf + ni, 0, nf, nf) = Eigen::MatrixXd::Identity(nf, nf);

  const Eigen::MatrixXd e = matrix_exp(aug * dt_h);

  model.phi = e.block(0, 0, nf, nf);
  model.gamma_q = e.block(0, nf, nf, nf);
  model.gamma_w = e.block(0, 2 * nf, nf, nf);
  model.gamma_0 = e.block(0, 3 * nf, nf, nb);

  const int ir = nf + ni;
  model.iphi = e.block(ir, 0, nf, nf);
  model.igamma_q = e.block(ir, nf, nf, nf);
  model.igamma_w = e.block(ir, 2 * nf, nf, nf);
  model.igamma_0 = e.block(ir, 3 * nf, nf, nb);
  return model;
}

}  // namespace zonemv
