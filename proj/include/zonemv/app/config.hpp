#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zonemv/control.hpp"
#include "zonemv/gains.hpp"
#include "zonemv/network.hpp"
#include "zonemv/pricing.hpp"
#include "zonemv/scenario.hpp"
#include "zonemv/weather.hpp"

namespace zonemv::app {

/// Bad or missing configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComfortConfig {
  double tight_c = 1.0;
  double wide_c = 2.0;
  std::vector<std::pair<double, double>> tight_windows{{6.0, 9.0}, {18.0, 22.0}};
};

/// Everything a run needs. Defaults reproduce the two-zone heat-pump example.
struct RunConfig {
  ThermalNetwork network;
  SetpointPlan plan;
  TimeGrid grid{0.25, 480, 0.0};
  Tariff tariff = Tariff::chicago_time_of_use();
  CopCurve cop;
  GainSpec gains;
  Eigen::VectorXd exterior_wall_area_m2;
  Eigen::VectorXd floor_area_m2;
  ComfortConfig comfort;
  std::optional<std::filesystem::path> weather_path;
  SyntheticWeatherSpec synthetic_weather;
  PowerBounds power_bounds;
  std::optional<double> constant_thermal_price;  // $/kWh thermal, replaces tariff/COP
  std::filesystem::path output_dir = "out";
};

/// Two zones: C = [0.27, 0.81] kWh/°C; alpha_10 = 45, alpha_12 = 90,
/// alpha_20 = 135 W/°C; zone 1 controlled; 21 °C setpoints; five days at
/// 15-minute steps.
RunConfig default_config();

/// Overlays the keys present in `doc` on default_config(). Conductances are
/// given in W/°C and zone numbers are 1-based. Relative weather paths resolve
/// against `base_dir`.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Checks every invariant of the assembled configuration.
void validate_config(const RunConfig& cfg);

}  // namespace zonemv::app
