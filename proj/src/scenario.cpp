#include "zonemv/scenario.hpp"

#include <algorithm>
#include <stdexcept>

#include "zonemv/errors.hpp"

namespace zonemv {

void SetpointPlan::validate(int zones) const {
  if (setpoints.size() != zones) throw std::invalid_argument("one setpoint per zone required");
  if (!setpoints.allFinite()) throw std::invalid_argument("setpoints must be finite");
  if (controlled.empty()) throw std::invalid_argument("at least one controlled zone required");
  for (std::size_t i = 0; i < controlled.size(); ++i) {
    if (controlled[i] < 0 || controlled[i] >= zones) {
      throw std::invalid_argument("controlled zone out of range");
    }
    if (i > 0 && controlled[i] <= controlled[i - 1]) {
      throw std::invalid_argument("controlled zones must be sorted and distinct");
    }
  }
}

std::vector<int> SetpointPlan::uncontrolled(int zones) const {
  std::vector<int> out;
  for (int i = 0; i < zones; ++i) {
    if (!is_controlled(i)) out.push_back(i);
  }
  return out;
}

bool SetpointPlan::is_controlled(int zone) const {
  return std::binary_search(controlled.begin(), controlled.end(), zone);
}

Eigen::MatrixXd tracking_power(const ThermalNetwork& net, const Trajectory& traj,
                               const std::vector<int>& tracked) {
  check_shape(traj);
  if (traj.zones() != net.zones()) throw GridMismatch("trajectory zone count differs from network");
  const int steps = traj.steps();
  const double dt = traj.grid.dt_h;
  const int n = net.zones();
  Eigen::MatrixXd q(steps, static_cast<Eigen::Index>(tracked.size()));
  for (std::size_t c = 0; c < tracked.size(); ++c) {
    const int i = tracked[c];
    if (i < 0 || i >= n) throw std::out_of_range("tracked zone out of range");
    const double cap = net.capacitance(i);
    const double to_out = net.to_outdoor(i);
    for (int k = 0; k < steps; ++k) {
      const double own = traj.temp_integrals(k, i);
      double conduction = to_out * (own - dt * traj.outdoor(k));
      for (int j = 0; j < n; ++j) {
        if (j != i) conduction += net.between(i, j) * (own - traj.temp_integrals(k, j));
      }
      const double storage = cap * (traj.temps(k + 1, i) - traj.temps(k, i));
      q(k, static_cast<Eigen::Index>(c)) = (storage + conduction) / dt - traj.gains(k, i);
    }
  }
  return q;
}

namespace {

void check_inputs(const ThermalNetwork& net, const SetpointPlan& plan,
                  const WeatherSeries& weather, const Eigen::MatrixXd& gains) {
  validate_network(net);
  plan.validate(net.zones());
  weather.validate();
  if (gains.rows() != weather.grid.steps || gains.cols() != net.zones()) {
    throw GridMismatch("gain signal must be steps x zones");
  }
}

std::vector<int> all_zones(int n) {
  std::vector<int> z(n);
  for (int i = 0; i < n; ++i) z[i] = i;
  return z;
}

}  // namespace

Trajectory run_baseline(const ThermalNetwork& net, const SetpointPlan& plan,
                        const WeatherSeries& weather, const Eigen::MatrixXd& gains) {
  check_inputs(net, plan, weather, gains);
  const int steps = weather.grid.steps;
  Trajectory traj;
  traj.grid = weather.grid;
  traj.temps = plan.setpoints.transpose().replicate(steps + 1, 1);
  traj.temp_integrals = (weather.grid.dt_h * plan.setpoints).transpose().replicate(steps, 1);
  traj.gains = gains;
  traj.outdoor = weather.outdoor;
  traj.powers = Eigen::MatrixXd::Zero(steps, net.zones());
  traj.powers = tracking_power(net, traj, all_zones(net.zones()));
  return traj;
}

Trajectory run_experiment(const ThermalNetwork& net, const SetpointPlan& plan,
                          const WeatherSeries& weather, const Eigen::MatrixXd& gains,
                          const Eigen::MatrixXd& controlled_q) {
  check_inputs(net, plan, weather, gains);
  const int steps = weather.grid.steps;
  const int m = static_cast<int>(plan.controlled.size());
  if (controlled_q.rows() != steps || controlled_q.cols() != m) {
    throw GridMismatch("controlled power must be steps x controlled zones");
  }
  if (!controlled_q.allFinite()) throw std::invalid_argument("controlled power must be finite");

  Trajectory traj = run_baseline(net, plan, weather, gains);

  // The baseline already satisfies the dynamics, so only the deviation
  // x = T - T~ driven by q - q~ needs propagating. Identical inputs give
  // x == 0 exactly.
  const auto model = discretize_reduced(net, plan.controlled, weather.grid.dt_h);
  Eigen::MatrixXd dq(steps, m);
  for (int c = 0; c < m; ++c) {
    dq.col(c) = traj.powers.col(plan.controlled[c]) - controlled_q.col(c);
  }
  const auto dev = propagate(model, Eigen::VectorXd::Zero(m), dq, Eigen::MatrixXd::Zero(steps, m),
                             Eigen::MatrixXd::Zero(steps, model.boundary_count()));
  for (int c = 0; c < m; ++c) {
    const int i = plan.controlled[c];
    traj.temps.col(i) -= dev.temps.col(c);
    traj.temp_integrals.col(i) -= dev.integrals.col(c);
    traj.powers.col(i) = controlled_q.col(c);
  }
  const auto others = plan.uncontrolled(net.zones());
  const Eigen::MatrixXd q_other = tracking_power(net, traj, others);
  for (std::size_t c = 0; c < others.size(); ++c) {
    traj.powers.col(others[c]) = q_other.col(static_cast<Eigen::Index>(c));
  }
  return traj;
}

void recompute_step_integrals(const ThermalNetwork& net, const std::vector<int>& free_zones,
                              Trajectory& traj) {
  const int steps = traj.steps();
  const double dt = traj.grid.dt_h;
  traj.temp_integrals = dt * traj.temps.topRows(steps);
  if (free_zones.empty()) return;

  const auto model = discretize_reduced(net, free_zones, dt);
  const int nf = model.free_count();
  const int nb = model.boundary_count();
  Eigen::MatrixXd q(steps, nf), w(steps, nf), b(steps, nb);
  for (int c = 0; c < nf; ++c) {
    q.col(c) = traj.powers.col(model.free_zones[c]);
    w.col(c) = traj.gains.col(model.free_zones[c]);
  }
  b.col(0) = traj.outdoor;
  for (int s = 1; s < nb; ++s) b.col(s) = traj.temps.col(model.boundary_nodes[s] - 1).head(steps);

  for (int k = 0; k < steps; ++k) {
    Eigen::VectorXd t(nf);
    for (int c = 0; c < nf; ++c) t(c) = traj.temps(k, model.free_zones[c]);
    const Eigen::VectorXd integral = model.iphi * t + model.igamma_q * q.row(k).transpose() +
                                     model.igamma_w * w.row(k).transpose() +
                                     model.igamma_0 * b.row(k).transpose();
    for (int c = 0; c < nf; ++c) traj.temp_integrals(k, model.free_zones[c]) = integral(c);
  }
}

}  // namespace zonemv
