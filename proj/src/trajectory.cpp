#include "zonemv/trajectory.hpp"

#include <stdexcept>
#include <string>

#include "zonemv/errors.hpp"

namespace zonemv {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw GridMismatch(what);
}

}  // namespace

StepResponse propagate(const DiscreteModel& model, const Eigen::VectorXd& initial,
                       const Eigen::MatrixXd& q, const Eigen::MatrixXd& w,
                       const Eigen::MatrixXd& boundary) {
  const int nf = model.free_count();
  const int nb = model.boundary_count();
  const auto steps = q.rows();
  require(initial.size() == nf, "initial state size does not match free zones");
  require(q.cols() == nf && w.cols() == nf, "input signals do not match free zones");
  require(w.rows() == steps && boundary.rows() == steps, "input signals differ in length");
  require(boundary.cols() == nb, "boundary signal does not match boundary nodes");

  StepResponse out;
  out.temps.resize(steps + 1, nf);
  out.integrals.resize(steps, nf);
  out.temps.row(0) = initial.transpose();
  for (Eigen::Index k = 0; k < steps; ++k) {
    const Eigen::VectorXd t = out.temps.row(k).transpose();
    const Eigen::VectorXd qk = q.row(k).transpose();
    const Eigen::VectorXd wk = w.row(k).transpose();
    const Eigen::VectorXd bk = boundary.row(k).transpose();
    out.temps.row(k + 1) =
        (model.phi * t + model.gamma_q * qk + model.gamma_w * wk + model.gamma_0 * bk)
            .transpose();
    out.integrals.row(k) =
        (model.iphi * t + model.igamma_q * qk + model.igamma_w * wk + model.igamma_0 * bk)
            .transpose();
  }
  return out;
}

Trajectory simulate(const DiscreteModel& model, const TimeGrid& grid,
                    const Eigen::VectorXd& initial, const Eigen::MatrixXd& q,
                    const Eigen::MatrixXd& w, const Eigen::VectorXd& outdoor) {
  if (model.boundary_count() != 1) {
    throw std::invalid_argument("simulate needs a full-network model");
  }
  require(grid.dt_h == model.dt_h, "grid step differs from the model step");
  require(q.rows() == grid.steps && w.rows() == grid.steps && outdoor.size() == grid.steps,
          "signals do not match the time grid");

  auto response = propagate(model, initial, q, w, Eigen::MatrixXd(outdoor));
  Trajectory traj;
  traj.grid = grid;
  traj.temps = std::move(response.temps);
  traj.temp_integrals = std::move(response.integrals);
  traj.powers = q;
  traj.gains = w;
  traj.outdoor = outdoor;
  return traj;
}

void check_shape(const Trajectory& traj) {
  const int k = traj.grid.steps;
  const auto n = traj.temps.cols();
  require(traj.temps.rows() == k + 1, "temperature samples must number steps + 1");
  require(traj.powers.rows() == k && traj.powers.cols() == n, "power signal shape mismatch");
  require(traj.gains.rows() == k && traj.gains.cols() == n, "gain signal shape mismatch");
  require(traj.outdoor.size() == k, "outdoor signal length mismatch");
  require(traj.temp_integrals.rows() == k && traj.temp_integrals.cols() == n,
          "step integral shape mismatch");
}

void check_compatible(const Trajectory& a, const Trajectory& b) {
  check_shape(a);
  check_shape(b);
  require(a.grid == b.grid, "trajectories use different time grids");
  require(a.zones() == b.zones(), "trajectories have different zone counts");
}

namespace {

void check_price(const Trajectory& a, const Eigen::VectorXd& price, int zone) {
  require(price.size() == a.steps(), "price signal length does not match the grid");
  if (zone < 0 || zone >= a.zones()) throw std::out_of_range("zone index out of range");
}

}  // namespace

double weighted_integral(const Trajectory& a, const Trajectory& b,
                         const Eigen::VectorXd& price, int zone) {
  check_compatible(a, b);
  check_price(a, price, zone);
  const Eigen::VectorXd dx = a.temp_integrals.col(zone) - b.temp_integrals.col(zone);
  return price.dot(dx);
}

double stieltjes_integral(const Trajectory& a, const Trajectory& b,
                          const Eigen::VectorXd& price, int zone, StieltjesMode mode) {
  check_compatible(a, b);
  check_price(a, price, zone);
  const Eigen::VectorXd x = a.temps.col(zone) - b.temps.col(zone);
  const int steps = a.steps();
  double sum = 0.0;
  if (mode == StieltjesMode::kPriceTimesIncrement) {
    for (int k = 0; k < steps; ++k) sum += price(k) * (x(k + 1) - x(k));
    return sum;
  }
  // Only interior breakpoints contribute; the endpoint terms
  // a(tau) x(tau) - a(0) x(0) are the integration-by-parts boundary term.
  for (int k = 1; k < steps; ++k) sum -= (price(k) - price(k - 1)) * x(k);
  return sum;
}

double boundary_term(const Trajectory& a, const Trajectory& b, const Eigen::VectorXd& price,
                     int zone) {
  check_compatible(a, b);
  check_price(a, price, zone);
  const int steps = a.steps();
  const double x0 = a.temps(0, zone) - b.temps(0, zone);
  const double xk = a.temps(steps, zone) - b.temps(steps, zone);
  return price(steps - 1) * xk - price(0) * x0;
}

}  // namespace zonemv
