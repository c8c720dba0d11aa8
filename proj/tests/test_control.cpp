#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "zonemv/control.hpp"
#include "zonemv/gains.hpp"
#include "zonemv/pricing.hpp"

using namespace zonemv;

namespace {

struct TwoZoneRun {
  ThermalNetwork net = oracle::two_zone_network();
  SetpointPlan plan{Eigen::Vector2d(21.0, 21.0), {0}};
  TimeGrid grid;
  WeatherSeries weather;
  Eigen::MatrixXd gains;
  Eigen::VectorXd price;

  explicit TwoZoneRun(int steps) : grid{0.25, steps, 0.0} {
    weather = synthetic_weather({}, grid);
    gains = synthesize_gains({}, weather, Eigen::Vector2d(30, 90), Eigen::Vector2d(25, 75));
    price = thermal_price(Tariff::chicago_time_of_use(), CopCurve{}, weather.outdoor, grid);
  }

  ControlPlan solve(const ComfortSchedule& comfort, const PowerBounds& bounds = {}) const {
    return optimize_controlled_zones(net, plan, grid, price, comfort, gains, weather.outdoor, bounds);
  }

  double baseline_controlled_cost() const {
    const auto base = run_baseline(net, plan, weather, gains);
    double cost = 0.0;
    for (int z : plan.controlled) cost += grid.dt_h * price.dot(base.powers.col(z));
    return cost;
  }
};

}  // namespace

TEST(ComfortSchedule, OccupiedHome) {
  const TimeGrid grid{0.25, 96, 0.0};
  const auto c = ComfortSchedule::occupied_home(grid);
  ASSERT_EQ(c.band.size(), 97);
  EXPECT_EQ(c.band(0), 2.0);       // midnight
  EXPECT_EQ(c.band(23), 2.0);      // 5:45
  EXPECT_EQ(c.band(24), 1.0);      // 6:00
  EXPECT_EQ(c.band(35), 1.0);      // 8:45
  EXPECT_EQ(c.band(36), 2.0);      // 9:00
  EXPECT_EQ(c.band(72), 1.0);      // 18:00
  EXPECT_EQ(c.band(87), 1.0);      // 21:45
  EXPECT_EQ(c.band(88), 2.0);      // 22:00
  EXPECT_EQ(c.band(96), 2.0);      // midnight again
  EXPECT_NO_THROW(c.validate(grid));
  ComfortSchedule bad{Eigen::VectorXd::Constant(97, -0.1)};
  EXPECT_THROW(bad.validate(grid), std::invalid_argument);
  EXPECT_THROW(ComfortSchedule::constant(grid, 1.0).validate({0.25, 95, 0.0}), std::invalid_argument);
}

TEST(ControlLp, SingleStepDimensions) {
  ThermalNetwork net;
  net.capacitance = Eigen::VectorXd::Constant(1, 0.27);
  net.conductance = Eigen::MatrixXd::Zero(2, 2);
  net.conductance(0, 1) = net.conductance(1, 0) = 0.135;
  const SetpointPlan plan{Eigen::VectorXd::Constant(1, 20.0), {0}};
  const TimeGrid grid{0.25, 1, 0.0};
  const auto lp = build_control_lp(net, plan, grid, Eigen::VectorXd::Constant(1, 0.1),
                                   ComfortSchedule::constant(grid, 1.0), Eigen::MatrixXd::Zero(1, 1),
                                   Eigen::VectorXd::Constant(1, -5.0));
  EXPECT_EQ(lp.problem.variables(), 3);
  EXPECT_EQ(lp.problem.rows(), 3);
  EXPECT_EQ(lp.problem.lower(lp.temp_var(0, 0)), 19.0);
  EXPECT_EQ(lp.problem.upper(lp.temp_var(0, 1)), 21.0);
  EXPECT_EQ(lp.problem.lower(lp.power_var(0, 0)), 0.0);
  EXPECT_TRUE(std::isinf(lp.problem.upper(lp.power_var(0, 0))));
  EXPECT_DOUBLE_EQ(lp.problem.cost(lp.power_var(0, 0)), 0.25 * 0.1);
  EXPECT_EQ(lp.problem.rhs(lp.boundary_row(0, false)), 20.0);
  EXPECT_EQ(lp.problem.rhs(lp.boundary_row(0, true)), 20.0);
}

TEST(ControlLp, RejectsEmptyControlledSet) {
  const TwoZoneRun s(8);
  SetpointPlan plan = s.plan;
  plan.controlled.clear();
  EXPECT_THROW(build_control_lp(s.net, plan, s.grid, s.price, ComfortSchedule::constant(s.grid, 1.0),
                                s.gains, s.weather.outdoor),
               std::invalid_argument);
}

TEST(Optimize, ZeroBandForcesTheBaseline) {
  const TwoZoneRun s(96);
  const auto plan = s.solve(ComfortSchedule::constant(s.grid, 0.0));
  EXPECT_LE((plan.temps.array() - 21.0).abs().maxCoeff(), 1e-9);
  const auto base = run_baseline(s.net, s.plan, s.weather, s.gains);
  EXPECT_LE((plan.powers.col(0) - base.powers.col(0)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(plan.objective, s.baseline_controlled_cost(), 1e-9);
  EXPECT_LE(plan.solution.kkt.worst(), 1e-8);
}

TEST(Optimize, WideningTheBandNeverCostsMore) {
  const TwoZoneRun s(96);
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const auto plan = s.solve(ComfortSchedule::constant(s.grid, delta));
    EXPECT_LE(plan.objective, previous + 1e-9) << "delta " << delta;
    EXPECT_LE(plan.objective, s.baseline_controlled_cost() + 1e-9);
    EXPECT_LE(plan.solution.kkt.worst(), 1e-8);
    previous = plan.objective;
  }
}

TEST(Optimize, OccupiedScheduleBehaviour) {
  const TwoZoneRun s(480);
  const auto comfort = ComfortSchedule::occupied_home(s.grid);
  const auto plan = s.solve(comfort);
  ASSERT_EQ(plan.solution.status, lp::LpStatus::kOptimal);
  EXPECT_LE(plan.solution.kkt.worst(), 1e-8);
  EXPECT_LT(plan.objective, s.baseline_controlled_cost());
  EXPECT_LE(std::abs(plan.temps(0, 0) - 21.0), 1e-9);
  EXPECT_LE(std::abs(plan.temps(480, 0) - 21.0), 1e-9);
  EXPECT_GE(plan.powers.minCoeff(), -1e-9);

  int on_lower = 0;
  for (int k = 0; k <= 480; ++k) {
    const double lower = 21.0 - comfort.band(k);
    EXPECT_GE(plan.temps(k, 0), lower - 1e-9);
    EXPECT_LE(plan.temps(k, 0), 21.0 + comfort.band(k) + 1e-9);
    if (plan.temps(k, 0) < lower + 1e-6) ++on_lower;
  }
  EXPECT_GT(on_lower, 240);

  // Somewhere the zone sits well above its lower band just before the price jumps.
  bool preheats = false;
  for (int k = 1; k < 480; ++k) {
    if (s.price(k) > 1.05 * s.price(k - 1) && plan.temps(k, 0) > 21.0 - comfort.band(k) + 0.5) {
      preheats = true;
    }
  }
  EXPECT_TRUE(preheats);

  const auto exp = run_experiment(s.net, s.plan, s.weather, s.gains, plan.powers);
  EXPECT_LE((exp.temps.col(0) - plan.temps.col(0)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Optimize, SeveralControlledZonesReplayExactly) {
  std::mt19937_64 rng(17);
  const auto net = oracle::random_network(rng, 4, 0.3, 1.5, 0.02, 0.15);
  const SetpointPlan plan{Eigen::Vector4d(21, 20, 22, 21), {0, 2}};
  const TimeGrid grid{0.25, 96, 0.0};
  const auto ws = synthetic_weather({}, grid);
  const auto w = synthesize_gains({}, ws, Eigen::Vector4d(30, 20, 40, 10), Eigen::Vector4d(25, 20, 30, 15));
  const auto price = thermal_price(Tariff::chicago_time_of_use(), CopCurve{}, ws.outdoor, grid);
  const auto cp = optimize_controlled_zones(net, plan, grid, price,
                                            ComfortSchedule::occupied_home(grid), w, ws.outdoor);
  EXPECT_LE(cp.solution.kkt.worst(), 1e-8);
  const auto exp = run_experiment(net, plan, ws, w, cp.powers);
  EXPECT_LE((exp.temps.col(0) - cp.temps.col(0)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE((exp.temps.col(2) - cp.temps.col(1)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Optimize, SignedPowerRange) {
  const TwoZoneRun s(96);
  const auto comfort = ComfortSchedule::constant(s.grid, 1.0);
  const auto heating = s.solve(comfort);
  const auto both = s.solve(comfort, {-std::numeric_limits<double>::infinity(), 10.0});
  EXPECT_LE(both.objective, heating.objective + 1e-9);
  EXPECT_LE(both.solution.kkt.worst(), 1e-8);
}

TEST(Optimize, InfeasibleBoundsReportAWindow) {
  const TwoZoneRun s(96);
  try {
    s.solve(ComfortSchedule::constant(s.grid, 0.5), {0.0, 0.3});
    FAIL() << "expected InfeasibleControl";
  } catch (const InfeasibleControl& e) {
    EXPECT_LE(0, e.first_step());
    EXPECT_LE(e.first_step(), e.last_step());
    EXPECT_LE(e.last_step(), 96);
  }
}

TEST(Optimize, Determinism) {
  const TwoZoneRun s(96);
  const auto a = s.solve(ComfortSchedule::occupied_home(s.grid));
  const auto b = s.solve(ComfortSchedule::occupied_home(s.grid));
  EXPECT_EQ(a.powers, b.powers);
  EXPECT_EQ(a.temps, b.temps);
}
