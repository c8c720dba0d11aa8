#include "zonemv/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCore>

#include "zonemv/errors.hpp"

namespace zonemv {

ComfortSchedule ComfortSchedule::from_windows(
    const TimeGrid& grid, double tight_c, double wide_c,
    const std::vector<std::pair<double, double>>& windows) {
  ComfortSchedule s;
  s.band.resize(grid.steps + 1);
  for (int k = 0; k <= grid.steps; ++k) {
    const double h = grid.hour_of_day(k);
    const bool tight = std::any_of(windows.begin(), windows.end(), [h](const auto& w) {
      return w.first <= w.second ? (h >= w.first && h < w.second)
                                 : (h >= w.first || h < w.second);
    });
    s.band(k) = tight ? tight_c : wide_c;
  }
  return s;
}

ComfortSchedule ComfortSchedule::occupied_home(const TimeGrid& grid) {
  return from_windows(grid, 1.0, 2.0, {{6.0, 9.0}, {18.0, 22.0}});
}

ComfortSchedule ComfortSchedule::constant(const TimeGrid& grid, double band_c) {
  return ComfortSchedule{Eigen::VectorXd::Constant(grid.steps + 1, band_c)};
}

void ComfortSchedule::validate(const TimeGrid& grid) const {
  if (band.size() != grid.steps + 1) {
    throw GridMismatch("comfort band needs one entry per temperature sample");
  }
  if (!band.allFinite() || (band.array() < 0.0).any()) {
    throw std::invalid_argument("comfort band must be finite and nonnegative");
  }
}

ControlLp build_control_lp(const ThermalNetwork& net, const SetpointPlan& plan,
                           const TimeGrid& grid, const Eigen::VectorXd& price,
                           const ComfortSchedule& comfort, const Eigen::MatrixXd& gains,
                           const Eigen::VectorXd& outdoor, const PowerBounds& bounds) {
  validate_network(net);
  validate_grid(grid);
  if (plan.controlled.empty()) throw std::invalid_argument("no controlled zones");
  plan.validate(net.zones());
  comfort.validate(grid);
  const int steps = grid.steps;
  if (price.size() != steps || outdoor.size() != steps) {
    throw GridMismatch("price and outdoor signals must have one entry per step");
  }
  if (gains.rows() != steps || gains.cols() != net.zones()) {
    throw GridMismatch("gain signal must be steps x zones");
  }
  if (!(bounds.lower_kw <= bounds.upper_kw)) {
    throw std::invalid_argument("power bounds are crossed");
  }

  ControlLp out;
  out.model = discretize_reduced(net, plan.controlled, grid.dt_h);
  out.controlled = static_cast<int>(plan.controlled.size());
  out.steps = steps;
  const auto& model = out.model;
  const int m = out.controlled;
  const int nb = model.boundary_count();
  const int n_vars = m * (steps + 1) + m * steps;
  const int n_rows = m * steps + 2 * m;

  auto& p = out.problem;
  p.cost = Eigen::VectorXd::Zero(n_vars);
  p.lower.resize(n_vars);
  p.upper.resize(n_vars);
  p.rhs.resize(n_rows);
  p.names.resize(n_vars);

  for (int c = 0; c < m; ++c) {
    const int zone = plan.controlled[c];
    const double sp = plan.setpoints(zone);
    for (int k = 0; k <= steps; ++k) {
      const int v = out.temp_var(c, k);
      p.lower(v) = sp - comfort.band(k);
      p.upper(v) = sp + comfort.band(k);
      p.names[v] = "T_" + std::to_string(zone + 1) + "(" + std::to_string(k) + ")";
    }
    for (int k = 0; k < steps; ++k) {
      const int v = out.power_var(c, k);
      p.lower(v) = bounds.lower_kw;
      p.upper(v) = bounds.upper_kw;
      p.cost(v) = grid.dt_h * price(k);
      p.names[v] = "q_" + std::to_string(zone + 1) + "(" + std::to_string(k) + ")";
    }
  }

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(m) * steps * (1 + 2 * m) + 2 * m);
  Eigen::VectorXd boundary(nb);
  Eigen::VectorXd w(m);
  for (int k = 0; k < steps; ++k) {
    boundary(0) = outdoor(k);
    for (int s = 1; s < nb; ++s) boundary(s) = plan.setpoints(model.boundary_nodes[s] - 1);
    for (int c = 0; c < m; ++c) w(c) = gains(k, plan.controlled[c]);
    const Eigen::VectorXd affine = model.gamma_w * w + model.gamma_0 * boundary;
    for (int c = 0; c < m; ++c) {
      const int row = out.dynamics_row(c, k);
      entries.emplace_back(row, out.temp_var(c, k + 1), 1.0);
      for (int l = 0; l < m; ++l) {
        entries.emplace_back(row, out.temp_var(l, k), -model.phi(c, l));
        entries.emplace_back(row, out.power_var(l, k), -model.gamma_q(c, l));
      }
      p.rhs(row) = affine(c);
    }
  }
  for (int c = 0; c < m; ++c) {
    const double sp = plan.setpoints(plan.controlled[c]);
    entries.emplace_back(out.boundary_row(c, false), out.temp_var(c, 0), 1.0);
    entries.emplace_back(out.boundary_row(c, true), out.temp_var(c, steps), 1.0);
    p.rhs(out.boundary_row(c, false)) = sp;
    p.rhs(out.boundary_row(c, true)) = sp;
  }
  p.constraints.resize(n_rows, n_vars);
  p.constraints.setFromTriplets(entries.begin(), entries.end());
  p.constraints.prune(0.0);
  p.constraints.makeCompressed();
  return out;
}

ControlPlan optimize_controlled_zones(const ThermalNetwork& net, const SetpointPlan& plan,
                                      const TimeGrid& grid, const Eigen::VectorXd& price,
                                      const ComfortSchedule& comfort,
                                      const Eigen::MatrixXd& gains,
                                      const Eigen::VectorXd& outdoor, const PowerBounds& bounds,
                                      const lp::SolveOptions& options) {
  const auto lp = build_control_lp(net, plan, grid, price, comfort, gains, outdoor, bounds);
  ControlPlan result;
  result.solution = lp::solve_lp(lp.problem, options);
  const auto& sol = result.solution;
  const int m = lp.controlled;
  const int steps = lp.steps;

  if (sol.status == lp::LpStatus::kInfeasible) {
    int first = steps, last = 0;
    if (sol.certificate && sol.certificate->conflicting_variable) {
      const int v = *sol.certificate->conflicting_variable;
      first = last = v < m * (steps + 1) ? v % (steps + 1) : (v - m * (steps + 1)) % steps;
    } else if (sol.certificate) {
      const auto& ray = sol.certificate->ray;
      const double cut = 1e-9 * std::max(1.0, ray.cwiseAbs().maxCoeff());
      for (int c = 0; c < m; ++c) {
        for (int k = 0; k < steps; ++k) {
          if (std::abs(ray(lp.dynamics_row(c, k))) > cut) {
            first = std::min(first, k);
            last = std::max(last, k + 1);
          }
        }
        if (std::abs(ray(lp.boundary_row(c, false))) > cut) first = 0;
        if (std::abs(ray(lp.boundary_row(c, true))) > cut) last = steps;
      }
      if (first > last) first = last = 0;
    }
    throw InfeasibleControl("comfort schedule is infeasible between steps " +
                                std::to_string(first) + " and " + std::to_string(last),
                            first, last);
  }
  if (sol.status != lp::LpStatus::kOptimal) {
    throw std::runtime_error(std::string("control LP stopped: ") + lp::to_string(sol.status));
  }

  result.powers.resize(steps, m);
  result.temps.resize(steps + 1, m);
  for (int c = 0; c < m; ++c) {
    for (int k = 0; k <= steps; ++k) result.temps(k, c) = sol.x(lp.temp_var(c, k));
    for (int k = 0; k < steps; ++k) result.powers(k, c) = sol.x(lp.power_var(c, k));
  }
  result.objective = sol.objective;
  return result;
}

}  // namespace zonemv
