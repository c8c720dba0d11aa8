#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zonemv/app/commands.hpp"

using namespace zonemv;
using namespace zonemv::app;

int main(int argc, char** argv) {
  CLI::App cli{"Zone-level measurement and verification of HVAC control savings"};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool svg = false;
  cli.add_option("--config", config_path, "JSON run configuration");
  cli.add_option("--out-dir", out_dir, "Output directory");
  cli.add_option("--seed", seed, "Seed for the synthetic gain noise");
  cli.add_flag("--svg", svg, "Also write SVG plots");

  auto* simulate = cli.add_subcommand("simulate", "Baseline run: every zone tracks its setpoint");

  auto* optimize = cli.add_subcommand("optimize", "Optimal control of the controlled zones");
  bool lp_diagnostics = false;
  optimize->add_flag("--lp-diagnostics", lp_diagnostics, "Write lp_solution.json");

  auto* estimate = cli.add_subcommand("estimate", "Savings estimates from two trajectory files");
  std::string baseline_csv;
  std::string experiment_csv;
  estimate->add_option("--baseline", baseline_csv, "Baseline CSV (default: OUT/baseline.csv)");
  estimate->add_option("--experiment", experiment_csv,
                       "Experiment CSV (default: OUT/experiment.csv)");

  auto* reproduce = cli.add_subcommand("reproduce-example", "Two-zone heat-pump example");
  std::optional<double> constant_price;
  reproduce->add_option("--constant-price", constant_price,
                        "Constant thermal price in $/kWh instead of tariff and COP");

  auto* geometry = cli.add_subcommand("geometry", "Relative error from wall geometry");
  double u_int = 0.0;
  double u_ext = 0.0;
  double a_int = 0.0;
  double a_ext = 0.0;
  std::vector<double> square;
  auto* explicit_group = geometry->add_option_group("walls");
  explicit_group->add_option("--u-int", u_int, "Interior wall U-value");
  explicit_group->add_option("--u-ext", u_ext, "Exterior wall U-value");
  explicit_group->add_option("--a-int", a_int, "Interior wall area");
  explicit_group->add_option("--a-ext", a_ext, "Exterior wall area");
  auto* square_opt = geometry->add_option(
      "--square", square, "Square footprint: exterior wall count and u_int/u_ext")->expected(2);
  for (auto* opt : explicit_group->get_options()) opt->excludes(square_opt);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  return run_guarded(
      [&] {
        if (*geometry) {
          GeometryCase g{u_int, u_ext, a_int, a_ext};
          if (!square.empty()) {
            const double walls = square[0];
            if (walls != static_cast<int>(walls) || walls < 0 || walls > 4) {
              throw ConfigError("--square: exterior wall count must be an integer from 0 to 4");
            }
            try {
              g = GeometryCase::square_footprint(static_cast<int>(walls), square[1]);
            } catch (const std::invalid_argument& e) {
              throw ConfigError(std::string("--square: ") + e.what());
            }
          } else if (u_int < 0 || u_ext < 0 || a_int < 0 || a_ext < 0) {
            throw ConfigError("geometry: U-values and areas must be nonnegative");
          }
          cmd_geometry(g, std::cout);
          return;
        }

        RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (seed) cfg.gains.seed = *seed;
        const CommandOptions opt{svg, lp_diagnostics};

        if (*simulate) {
          cmd_simulate(cfg, std::cout, opt);
        } else if (*optimize) {
          cmd_optimize(cfg, std::cout, opt);
        } else if (*estimate) {
          cmd_estimate(cfg, baseline_csv.empty() ? cfg.output_dir / "baseline.csv" : std::filesystem::path(baseline_csv),
                       experiment_csv.empty() ? cfg.output_dir / "experiment.csv" : std::filesystem::path(experiment_csv),
                       std::cout);
        } else if (*reproduce) {
          cmd_reproduce_example(cfg, std::cout, {constant_price});
        }
      },
      std::cerr);
}
