#include "zonemv/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "zonemv/app/io.hpp"
#include "zonemv/app/report.hpp"
#include "zonemv/app/svg.hpp"
#include "zonemv/errors.hpp"

namespace zonemv::app {

namespace {

std::string money(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "$%.4f", v);
  return buf;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> days(const TimeGrid& grid, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = grid.time_h(k) / 24.0;
  return out;
}

/// Step signals get one extra trailing sample so the staircase spans the horizon.
std::vector<double> held(const Eigen::VectorXd& v) {
  auto out = to_std(v);
  if (!out.empty()) out.push_back(out.back());
  return out;
}

const char* kZoneColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string zone_color(int i) { return kZoneColors[i % 6]; }

std::string inputs_svg(const RunConfig& cfg, const RunInputs& in) {
  const auto& grid = in.grid();
  const int steps = grid.steps;
  const auto x = days(grid, steps + 1);
  std::vector<Panel> panels;

  panels.push_back({"Outdoor temperature", "time (days)", "T0 (C)",
                    {{"", x, held(in.weather.outdoor), "#000000", false, true}}});
  Panel gains{"Heat gains", "time (days)", "w (kW)", {}};
  for (int i = 0; i < in.gains.cols(); ++i) {
    gains.series.push_back({"zone " + std::to_string(i + 1), x, held(in.gains.col(i)), zone_color(i),
                            false, true});
  }
  panels.push_back(gains);
  if (in.cop.size() == steps) {
    panels.push_back({"Heat pump COP", "time (days)", "COP",
                      {{"", x, held(in.cop), "#000000", false, true}}});
    Eigen::VectorXd electric(steps);
    for (int k = 0; k < steps; ++k) electric(k) = cfg.tariff.price_at(grid.hour_of_day(k));
    panels.push_back({"Prices", "time (days)", "$/kWh",
                      {{"electric", x, held(electric), "#000000", false, true},
                       {"thermal", x, held(in.price), "#d62728", true, true}}});
  } else {
    panels.push_back({"Thermal price", "time (days)", "$/kWh",
                      {{"", x, held(in.price), "#d62728", false, true}}});
  }
  return render_svg(panels, 1, 760, 200);
}

std::string results_svg(const RunConfig& cfg, const OptimizeResult& r) {
  const auto& grid = r.inputs.grid();
  const int steps = grid.steps;
  const int n = r.baseline.zones();
  const auto x = days(grid, steps + 1);
  std::vector<Panel> temps, powers, costs;
  for (int i = 0; i < n; ++i) {
    const std::string zone = "Zone " + std::to_string(i + 1);
    Panel t{zone + " temperature", "time (days)", "T (C)",
            {{"baseline", x, to_std(r.baseline.temps.col(i)), "#000000", false, false},
             {"experiment", x, to_std(r.experiment.temps.col(i)), "#c2189b", false, false}}};
    if (cfg.plan.is_controlled(i)) {
      const Eigen::VectorXd sp = Eigen::VectorXd::Constant(steps + 1, cfg.plan.setpoints(i));
      t.series.push_back({"comfort band", x, to_std(sp + r.inputs.comfort.band), "#d62728", true});
      t.series.push_back({"", x, to_std(sp - r.inputs.comfort.band), "#d62728", true});
    }
    temps.push_back(t);
    powers.push_back({zone + " thermal power", "time (days)", "q (kW)",
                      {{"baseline", x, held(r.baseline.powers.col(i)), "#000000", false, true},
                       {"experiment", x, held(r.experiment.powers.col(i)), "#c2189b", false, true}}});
    Eigen::VectorXd cb = Eigen::VectorXd::Zero(steps + 1);
    Eigen::VectorXd ce = Eigen::VectorXd::Zero(steps + 1);
    for (int k = 0; k < steps; ++k) {
      cb(k + 1) = cb(k) + grid.dt_h * r.inputs.price(k) * r.baseline.powers(k, i);
      ce(k + 1) = ce(k) + grid.dt_h * r.inputs.price(k) * r.experiment.powers(k, i);
    }
    costs.push_back({zone + " cumulative cost", "time (days)", "cost ($)",
                     {{"baseline", x, to_std(cb), "#000000"},
                      {"experiment", x, to_std(ce), "#c2189b"}},
                     true});
  }
  std::vector<Panel> panels;
  for (auto* group : {&temps, &powers, &costs}) {
    panels.insert(panels.end(), group->begin(), group->end());
  }
  return render_svg(panels, n, 420, 240);
}

std::string geometry_svg() {
  std::vector<Panel> panels(1);
  panels[0] = {"Relative error, square footprint", "beta = u_int / u_ext", "e", {}};
  for (int walls = 1; walls <= 4; ++walls) {
    Series s{std::to_string(walls) + " exterior wall" + (walls > 1 ? "s" : ""), {}, {},
             zone_color(walls - 1)};
    for (int j = 0; j <= 40; ++j) {
      const double beta = 0.1 * j;
      s.x.push_back(beta);
      s.y.push_back(geometry_relative_error(GeometryCase::square_footprint(walls, beta)));
    }
    panels[0].series.push_back(s);
  }
  return render_svg(panels, 1, 520, 320);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_atomic(path, doc.dump(2) + "\n");
}

void print_zone_costs(std::ostream& out, const char* what, const Eigen::VectorXd& costs) {
  for (int i = 0; i < costs.size(); ++i) {
    out << what << " cost zone " << i + 1 << ": " << money(costs(i)) << '\n';
  }
}

}  // namespace

RunInputs prepare_inputs(const RunConfig& cfg) {
  RunInputs in;
  in.weather = cfg.weather_path ? load_weather(*cfg.weather_path, cfg.grid)
                                : synthetic_weather(cfg.synthetic_weather, cfg.grid);
  const auto& grid = in.weather.grid;
  in.gains = synthesize_gains(cfg.gains, in.weather, cfg.exterior_wall_area_m2, cfg.floor_area_m2);
  if (cfg.constant_thermal_price) {
    in.price = Eigen::VectorXd::Constant(grid.steps, *cfg.constant_thermal_price);
  } else {
    in.price = thermal_price(cfg.tariff, cfg.cop, in.weather.outdoor, grid);
    in.cop.resize(grid.steps);
    for (int k = 0; k < grid.steps; ++k) in.cop(k) = cop(cfg.cop, in.weather.outdoor(k));
  }
  in.comfort = ComfortSchedule::from_windows(grid, cfg.comfort.tight_c, cfg.comfort.wide_c,
                                             cfg.comfort.tight_windows);
  return in;
}

Eigen::VectorXd zone_costs(const Trajectory& traj, const Eigen::VectorXd& price) {
  return traj.grid.dt_h * (traj.powers.transpose() * price);
}

SimulateResult cmd_simulate(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  SimulateResult r{prepare_inputs(cfg), {}};
  r.baseline = run_baseline(cfg.network, cfg.plan, r.inputs.weather, r.inputs.gains);
  write_trajectory(cfg.output_dir / "baseline.csv", r.baseline, r.inputs.price);
  if (opt.svg) write_atomic(cfg.output_dir / "inputs.svg", inputs_svg(cfg, r.inputs));
  print_zone_costs(out, "baseline", zone_costs(r.baseline, r.inputs.price));
  return r;
}

OptimizeResult cmd_optimize(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  OptimizeResult r{prepare_inputs(cfg), {}, {}, {}};
  const auto& in = r.inputs;
  r.baseline = run_baseline(cfg.network, cfg.plan, in.weather, in.gains);
  r.plan = optimize_controlled_zones(cfg.network, cfg.plan, in.grid(), in.price, in.comfort,
                                     in.gains, in.weather.outdoor, cfg.power_bounds);
  r.experiment = run_experiment(cfg.network, cfg.plan, in.weather, in.gains, r.plan.powers);
  write_trajectory(cfg.output_dir / "experiment.csv", r.experiment, in.price);
  if (opt.lp_diagnostics) {
    write_json(cfg.output_dir / "lp_solution.json", lp_diagnostics_json(r.plan.solution));
  }
  if (opt.svg) write_atomic(cfg.output_dir / "results.svg", results_svg(cfg, r));

  const auto base = zone_costs(r.baseline, in.price);
  double base_controlled = 0.0;
  for (int z : cfg.plan.controlled) base_controlled += base(z);
  out << "objective (controlled-zone cost): " << money(r.plan.objective) << '\n';
  out << "baseline controlled-zone cost: " << money(base_controlled) << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", r.plan.solution.kkt.worst());
  out << "simplex iterations: " << r.plan.solution.iterations << ", worst KKT residual: " << buf
      << '\n';
  return r;
}

SavingsReport cmd_estimate(const RunConfig& cfg, const std::filesystem::path& baseline_csv,
                           const std::filesystem::path& experiment_csv, std::ostream& out) {
  auto base = read_trajectory(baseline_csv, cfg.grid.origin_hour);
  auto exp = read_trajectory(experiment_csv, cfg.grid.origin_hour);
  const int n = cfg.network.zones();
  if (base.trajectory.zones() != n || exp.trajectory.zones() != n) {
    throw GridMismatch("trajectory files have a different zone count than the configured network");
  }
  // Snap to the configured step so that the files and the network agree exactly.
  for (auto* f : {&base, &exp}) {
    if (std::abs(f->trajectory.grid.dt_h - cfg.grid.dt_h) > 1e-9 * cfg.grid.dt_h) {
      throw GridMismatch("trajectory time step differs from grid.dt_h");
    }
    f->trajectory.grid.dt_h = cfg.grid.dt_h;
  }
  if (base.trajectory.steps() != exp.trajectory.steps()) {
    throw GridMismatch("baseline and experiment files cover different step counts");
  }
  if ((base.price - exp.price).cwiseAbs().maxCoeff() > 1e-12 * base.price.cwiseAbs().maxCoeff()) {
    throw GridMismatch("baseline and experiment price columns differ");
  }
  recompute_step_integrals(cfg.network, {}, base.trajectory);
  recompute_step_integrals(cfg.network, cfg.plan.controlled, exp.trajectory);
  check_compatible(base.trajectory, exp.trajectory);

  const auto report = estimate_savings(base.trajectory, exp.trajectory, cfg.network,
                                       CostModel::uniform(base.price, n), cfg.plan);
  write_json(cfg.output_dir / "savings_report.json", savings_json(report));
  const auto table = savings_table(report, cfg.plan.controlled);
  write_atomic(cfg.output_dir / "savings_table.txt", table);
  out << table;
  return report;
}

ReproduceResult cmd_reproduce_example(RunConfig cfg, std::ostream& out,
                                      const ReproduceOptions& opt) {
  if (opt.constant_price) {
    cfg.constant_thermal_price = *opt.constant_price;
    validate_config(cfg);
  }
  const CommandOptions with_plots{true, true};
  ReproduceResult r{cmd_optimize(cfg, out, with_plots), {}};
  const auto& in = r.run.inputs;
  write_trajectory(cfg.output_dir / "baseline.csv", r.run.baseline, in.price);
  write_atomic(cfg.output_dir / "inputs.svg", inputs_svg(cfg, in));

  r.report = estimate_savings(r.run.baseline, r.run.experiment, cfg.network,
                              CostModel::uniform(in.price, cfg.network.zones()), cfg.plan);
  write_json(cfg.output_dir / "savings_report.json", savings_json(r.report));
  const auto table = savings_table(r.report, cfg.plan.controlled);
  write_atomic(cfg.output_dir / "savings_table.txt", table);
  write_atomic(cfg.output_dir / "geometry_grid.csv", geometry_grid_csv());
  write_atomic(cfg.output_dir / "geometry.svg", geometry_svg());
  out << '\n' << table << '\n';

  if (cfg.network.zones() == 2 && cfg.plan.controlled.size() == 1) {
    ThermalNetwork view = cfg.network;
    if (cfg.plan.controlled[0] == 1) {
      // Relabel so that the controlled zone is zone 1.
      std::swap(view.capacitance(0), view.capacitance(1));
      view.conductance.row(1).swap(view.conductance.row(2));
      view.conductance.col(1).swap(view.conductance.col(2));
    }
    const double predicted = two_zone_relative_error(view);
    char buf[128];
    if (r.report.relative_error) {
      std::snprintf(buf, sizeof buf, "relative error %.4f vs constant-price prediction %.4f\n",
                    *r.report.relative_error, predicted);
    } else {
      std::snprintf(buf, sizeof buf, "relative error undefined vs constant-price prediction %.4f\n",
                    predicted);
    }
    out << buf;
  }
  return r;
}

double cmd_geometry(const GeometryCase& g, std::ostream& out) {
  const double e = geometry_relative_error(g);
  if (std::isinf(e)) {
    out << "infinite (interior zone: no true savings)\n";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", e);
    out << buf << '\n';
  }
  return e;
}

int run_guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidNetwork& e) {
    err << "config error: network: " << e.what() << '\n';
    return kExitConfig;
  } catch (const WeatherFormatError& e) {
    err << "weather error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleControl& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const GridMismatch& e) {
    err << "data mismatch: " << e.what() << '\n';
    return kExitDataMismatch;
  } catch (const PerturbedUncontrolledZone& e) {
    err << "data mismatch: " << e.what() << '\n';
    return kExitDataMismatch;
  } catch (const TrajectoryFormatError& e) {
    err << "data mismatch: " << e.what() << '\n';
    return kExitDataMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace zonemv::app
