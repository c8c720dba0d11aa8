#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "zonemv/app/config.hpp"
#include "zonemv/control.hpp"
#include "zonemv/estimator.hpp"

namespace zonemv::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitInfeasible = 3,
  kExitDataMismatch = 4,
};

/// Weather, gains, prices and comfort band on the run grid.
struct RunInputs {
  WeatherSeries weather;
  Eigen::MatrixXd gains;   // K x n, kW
  Eigen::VectorXd price;   // K, $/kWh thermal
  Eigen::VectorXd cop;     // K, empty under a constant thermal price
  ComfortSchedule comfort;

  const TimeGrid& grid() const { return weather.grid; }
};

RunInputs prepare_inputs(const RunConfig& cfg);

/// Delta t * sum_k a(k) q_i(k) for every zone.
Eigen::VectorXd zone_costs(const Trajectory& traj, const Eigen::VectorXd& price);

struct SimulateResult {
  RunInputs inputs;
  Trajectory baseline;
};

struct OptimizeResult {
  RunInputs inputs;
  Trajectory baseline;
  Trajectory experiment;
  ControlPlan plan;
};

struct CommandOptions {
  bool svg = false;
  bool lp_diagnostics = false;
};

/// Writes baseline.csv.
SimulateResult cmd_simulate(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt = {});

/// Writes experiment.csv, and lp_solution.json on request.
OptimizeResult cmd_optimize(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt = {});

/// Reads both trajectories, writes savings_report.json and savings_table.txt.
SavingsReport cmd_estimate(const RunConfig& cfg, const std::filesystem::path& baseline_csv,
                           const std::filesystem::path& experiment_csv, std::ostream& out);

struct ReproduceOptions {
  std::optional<double> constant_price;  // $/kWh thermal
};

struct ReproduceResult {
  OptimizeResult run;
  SavingsReport report;
};

/// Full artifact set: both trajectories, the savings report and table, the
/// geometry grid and the SVG figures.
ReproduceResult cmd_reproduce_example(RunConfig cfg, std::ostream& out,
                                      const ReproduceOptions& opt = {});

/// Prints and returns the relative error; +infinity for an interior zone.
double cmd_geometry(const GeometryCase& g, std::ostream& out);

/// Runs `body`, mapping exceptions to exit codes and messages on `err`.
int run_guarded(const std::function<void()>& body, std::ostream& err);

}  // namespace zonemv::app
