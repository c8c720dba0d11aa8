#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "zonemv/app/commands.hpp"
#include "zonemv/app/io.hpp"
#include "zonemv/app/report.hpp"

using namespace zonemv;
using namespace zonemv::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("zonemv_test_app_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig one_day(const fs::path& dir) {
  RunConfig cfg = default_config();
  cfg.grid.steps = 96;
  cfg.output_dir = dir;
  return cfg;
}

}  // namespace

TEST(Config, DefaultsDescribeTheTwoZoneHouse) {
  const auto cfg = default_config();
  EXPECT_NO_THROW(validate_config(cfg));
  EXPECT_EQ(cfg.network.capacitance(1), 0.81);
  EXPECT_NEAR(cfg.network.to_outdoor(0), 0.045, 1e-15);
  EXPECT_NEAR(cfg.network.between(0, 1), 0.090, 1e-15);
  EXPECT_NEAR(cfg.network.to_outdoor(1), 0.135, 1e-15);
  EXPECT_EQ(cfg.plan.controlled, std::vector<int>{0});
  EXPECT_EQ(cfg.grid.steps, 480);
}

TEST(Config, ParsesUnitsAndOneBasedZones) {
  const auto doc = nlohmann::json::parse(R"({
    "network": {"capacitance_kwh_per_c": [1.0, 2.0, 3.0],
                "conductance_w_per_c": [[0, 10, 20, 30], [10, 0, 5, 0], [20, 5, 0, 7], [30, 0, 7, 0]]},
    "setpoints_c": [20, 21, 22],
    "controlled_zones": [3],
    "grid": {"dt_h": 0.5, "steps": 48},
    "gains": {"exterior_wall_area_m2": [10, 10, 10], "floor_area_m2": [5, 5, 5]},
    "power_bounds_kw": {"upper": 4.0},
    "seed": 7
  })");
  const auto cfg = parse_config(doc);
  EXPECT_NEAR(cfg.network.to_outdoor(2), 0.030, 1e-15);
  EXPECT_NEAR(cfg.network.between(1, 2), 0.007, 1e-15);
  EXPECT_EQ(cfg.plan.controlled, std::vector<int>{2});
  EXPECT_EQ(cfg.plan.setpoints(1), 21.0);
  EXPECT_EQ(cfg.grid.dt_h, 0.5);
  EXPECT_EQ(cfg.grid.steps, 48);
  EXPECT_EQ(cfg.power_bounds.upper_kw, 4.0);
  EXPECT_EQ(cfg.gains.seed, 7u);
}

TEST(Config, ErrorsNameTheField) {
  auto message_of = [](const std::string& text) -> std::string {
    try {
      parse_config(nlohmann::json::parse(text));
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message_of(R"({"grid": {"dt_h": "fast"}})").find("grid.dt_h"), std::string::npos);
  EXPECT_NE(message_of(R"({"controlled_zones": [3]})").find("controlled_zones"), std::string::npos);
  EXPECT_NE(message_of(R"({"weather": {"path": "/nonexistent/weather.csv"}})")
                .find("/nonexistent/weather.csv"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"network": {"capacitance_kwh_per_c": [1, -1]}})").find("network"),
            std::string::npos);
}

TEST(Io, TrajectoryRoundTrip) {
  const auto dir = scratch("io");
  Trajectory t;
  t.grid = {0.25, 3, 0.0};
  t.temps.resize(4, 2);
  t.temps << 21, 20, 21.5, 20.25, 1.0 / 3.0, 19, 21, 20;
  t.powers.resize(3, 2);
  t.powers << 1, 0, 2.5, 0.125, 0, 3;
  t.gains = Eigen::MatrixXd::Constant(3, 2, 0.1);
  t.outdoor = Eigen::Vector3d(-5, -6, -7);
  t.temp_integrals = Eigen::MatrixXd::Constant(3, 2, 5.0);
  const Eigen::Vector3d price(0.05, 0.06, 0.07);
  write_trajectory(dir / "t.csv", t, price);
  const auto back = read_trajectory(dir / "t.csv");
  EXPECT_EQ(back.trajectory.grid, t.grid);
  EXPECT_LE((back.trajectory.temps - t.temps).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(back.trajectory.powers, t.powers);
  EXPECT_EQ(back.trajectory.gains, t.gains);
  EXPECT_EQ(back.trajectory.outdoor, t.outdoor);
  EXPECT_EQ(back.price, price);
  EXPECT_EQ(slurp(dir / "t.csv").substr(0, 4), "step");
  EXPECT_FALSE(fs::exists(dir / "t.csv.tmp"));
}

TEST(Io, RejectsMalformedFiles) {
  const auto dir = scratch("io_bad");
  std::ofstream(dir / "a.csv") << "step,time\n0,0\n";
  EXPECT_THROW(read_trajectory(dir / "a.csv"), TrajectoryFormatError);
  EXPECT_THROW(read_trajectory(dir / "missing.csv"), TrajectoryFormatError);
}

TEST(Report, JsonAndTable) {
  SavingsReport r;
  r.naive_controlled = 2.0;
  r.overestimation_error = 1.3;
  r.corrected_form_a = r.corrected_form_b = r.oracle_true = 0.7;
  r.relative_error = 1.3 / 0.7;
  r.per_zone = {{0, 5.0, 3.0, 2.0}, {1, 4.0, 5.3, -1.3}};
  const auto doc = savings_json(r);
  for (const char* key : {"naive_controlled_usd", "overestimation_error_usd", "corrected_form_a_usd",
                          "corrected_form_b_usd", "oracle_true_usd", "relative_error", "per_zone"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["per_zone"][1]["zone"], 2);
  const auto table = savings_table(r, {0});
  for (const char* row : {"Zone 1*", "Zone 2", "Total", "Baseline cost", "Experiment cost",
                          "Perceived savings", "Overestimation error", "True savings",
                          "Relative error"}) {
    EXPECT_NE(table.find(row), std::string::npos) << row;
  }
  EXPECT_NE(table.find("-1.30"), std::string::npos);
  r.relative_error.reset();
  EXPECT_TRUE(savings_json(r)["relative_error"].is_null());
}

TEST(Report, GeometryGrid) {
  const auto csv = geometry_grid_csv();
  EXPECT_NE(csv.find("inf"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 5 * 5);
}

TEST(Commands, SimulateHoldsSetpoints) {
  const auto dir = scratch("simulate");
  RunConfig cfg = default_config();
  cfg.output_dir = dir;
  std::ostringstream out;
  const auto res = cmd_simulate(cfg, out);
  const auto file = read_trajectory(dir / "baseline.csv");
  EXPECT_EQ(file.trajectory.temps.rows(), 481);
  EXPECT_LE((file.trajectory.temps.array() - 21.0).abs().maxCoeff(), 1e-12);
  EXPECT_NE(out.str().find("baseline cost zone 1"), std::string::npos);
  EXPECT_EQ(res.baseline.powers.rows(), 480);
}

TEST(Commands, ZeroBandExperimentMatchesBaseline) {
  const auto dir = scratch("zero_band");
  RunConfig cfg = one_day(dir);
  cfg.comfort = {0.0, 0.0, {}};
  std::ostringstream out;
  cmd_simulate(cfg, out);
  const auto res = cmd_optimize(cfg, out);
  const auto base = read_trajectory(dir / "baseline.csv");
  const auto exp = read_trajectory(dir / "experiment.csv");
  EXPECT_LE((exp.trajectory.temps - base.trajectory.temps).cwiseAbs().maxCoeff(), 1e-9);
  const double base_cost = zone_costs(res.baseline, res.inputs.price)(0);
  EXPECT_NEAR(res.plan.objective, base_cost, 1e-9);

  const auto report = cmd_estimate(cfg, dir / "baseline.csv", dir / "experiment.csv", out);
  EXPECT_NEAR(report.oracle_true, 0.0, 1e-9);
  EXPECT_FALSE(report.relative_error.has_value());
}

TEST(Commands, ObjectiveMatchesWrittenExperiment) {
  const auto dir = scratch("objective");
  RunConfig cfg = one_day(dir);
  std::ostringstream out;
  const auto res = cmd_optimize(cfg, out, {.svg = false, .lp_diagnostics = true});
  const auto exp = read_trajectory(dir / "experiment.csv");
  const double written = cfg.grid.dt_h * exp.price.dot(exp.trajectory.powers.col(0));
  EXPECT_NEAR(written, res.plan.objective, 1e-6);
  const auto diag = nlohmann::json::parse(slurp(dir / "lp_solution.json"));
  EXPECT_EQ(diag["status"], "optimal");
  EXPECT_LE(res.plan.solution.kkt.worst(), 1e-8);
}

TEST(Commands, EstimateFromFilesMatchesInMemory) {
  const auto dir = scratch("estimate");
  RunConfig cfg = one_day(dir);
  std::ostringstream out;
  const auto res = cmd_reproduce_example(cfg, out);
  const auto from_files = cmd_estimate(cfg, dir / "baseline.csv", dir / "experiment.csv", out);
  const double scale = std::abs(res.report.oracle_true) + std::abs(res.report.naive_controlled);
  EXPECT_NEAR(from_files.naive_controlled, res.report.naive_controlled, 1e-9 * scale);
  EXPECT_NEAR(from_files.oracle_true, res.report.oracle_true, 1e-9 * scale);
  EXPECT_NEAR(from_files.overestimation_error, res.report.overestimation_error, 1e-9 * scale);
  for (const char* name : {"baseline.csv", "experiment.csv", "savings_report.json",
                           "savings_table.txt", "geometry_grid.csv", "inputs.svg", "results.svg",
                           "geometry.svg"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }

  const auto same = cmd_estimate(cfg, dir / "baseline.csv", dir / "baseline.csv", out);
  EXPECT_EQ(same.naive_controlled, 0.0);
  EXPECT_EQ(same.oracle_true, 0.0);
  EXPECT_FALSE(same.relative_error.has_value());
}

TEST(Commands, Determinism) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  std::ostringstream out;
  cmd_reproduce_example(one_day(a), out);
  cmd_reproduce_example(one_day(b), out);
  for (const char* name : {"baseline.csv", "experiment.csv", "savings_report.json", "results.svg"}) {
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST(Commands, ExitCodes) {
  const auto dir = scratch("exit");
  std::ostringstream err;
  EXPECT_EQ(run_guarded([] {}, err), kExitOk);
  EXPECT_EQ(run_guarded([] { throw ConfigError("grid.dt_h: bad"); }, err), kExitConfig);
  EXPECT_EQ(run_guarded([] { throw std::runtime_error("boom"); }, err), kExitFailure);

  RunConfig tight = one_day(dir);
  tight.power_bounds.upper_kw = 0.3;
  std::ostringstream out;
  EXPECT_EQ(run_guarded([&] { cmd_optimize(tight, out); }, err), kExitInfeasible);

  RunConfig cfg = one_day(dir);
  cmd_simulate(cfg, out);
  RunConfig coarse = cfg;
  coarse.grid = {0.5, 48, 0.0};
  coarse.output_dir = dir / "coarse";
  cmd_simulate(coarse, out);
  EXPECT_EQ(run_guarded([&] { cmd_estimate(cfg, dir / "baseline.csv", dir / "coarse/baseline.csv", out); }, err),
            kExitDataMismatch);
  EXPECT_NE(err.str().find("grid.dt_h: bad"), std::string::npos);
}

TEST(Commands, GeometryOutput) {
  std::ostringstream out;
  EXPECT_NEAR(cmd_geometry(GeometryCase::square_footprint(1, 1.0), out), 3.0, 1e-12);
  EXPECT_TRUE(std::isinf(cmd_geometry(GeometryCase::square_footprint(0, 1.0), out)));
  EXPECT_NE(out.str().find("infinite"), std::string::npos);
}
