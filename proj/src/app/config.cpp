#include "zonemv/app/config.hpp"

#include <fstream>
#include <limits>

namespace zonemv::app {

using nlohmann::json;

RunConfig default_config() {
  RunConfig cfg;
  cfg.network.capacitance = Eigen::Vector2d(0.27, 0.81);
  cfg.network.conductance.resize(3, 3);
  cfg.network.conductance << 0.0, 0.045, 0.135,  //
      0.045, 0.0, 0.090,                         //
      0.135, 0.090, 0.0;
  cfg.plan.setpoints = Eigen::Vector2d(21.0, 21.0);
  cfg.plan.controlled = {0};
  cfg.exterior_wall_area_m2 = Eigen::Vector2d(30.0, 90.0);
  cfg.floor_area_m2 = Eigen::Vector2d(25.0, 75.0);
  return cfg;
}

namespace {

template <class T>
T get(const json& obj, const std::string& key, const std::string& field) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field + "." + key + ": expected " + (std::is_same_v<T, std::string> ? "a string" : "a number"));
  }
}

template <class T>
void maybe(const json& obj, const std::string& key, const std::string& field, T& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = get<T>(obj, key, field);
}

Eigen::VectorXd vector_of(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field + ": expected an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(field + ": expected an array of numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

const json& object_at(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_object()) throw ConfigError(key + ": expected an object");
  return v;
}

}  // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig cfg = default_config();

  if (doc.contains("network")) {
    const auto& net = object_at(doc, "network");
    if (net.contains("capacitance_kwh_per_c")) {
      cfg.network.capacitance =
          vector_of(net.at("capacitance_kwh_per_c"), "network.capacitance_kwh_per_c");
    }
    if (net.contains("conductance_w_per_c")) {
      const auto& rows = net.at("conductance_w_per_c");
      const std::string field = "network.conductance_w_per_c";
      if (!rows.is_array() || rows.empty()) throw ConfigError(field + ": expected a square matrix");
      const auto dim = static_cast<Eigen::Index>(rows.size());
      cfg.network.conductance.resize(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto row = vector_of(rows[static_cast<std::size_t>(i)], field);
        if (row.size() != dim) throw ConfigError(field + ": expected a square matrix");
        cfg.network.conductance.row(i) = row.transpose() / 1000.0;
      }
    }
  }
  const int n = cfg.network.zones();
  if (doc.contains("setpoints_c")) {
    cfg.plan.setpoints = vector_of(doc.at("setpoints_c"), "setpoints_c");
  } else if (cfg.plan.setpoints.size() != n) {
    cfg.plan.setpoints = Eigen::VectorXd::Constant(n, 21.0);
  }
  if (doc.contains("controlled_zones")) {
    const auto zones = vector_of(doc.at("controlled_zones"), "controlled_zones");
    cfg.plan.controlled.clear();
    for (double z : zones) {
      if (z != std::floor(z)) throw ConfigError("controlled_zones: zone numbers must be integers");
      cfg.plan.controlled.push_back(static_cast<int>(z) - 1);
    }
  }
  if (doc.contains("grid")) {
    const auto& g = object_at(doc, "grid");
    maybe(g, "dt_h", "grid", cfg.grid.dt_h);
    maybe(g, "steps", "grid", cfg.grid.steps);
    maybe(g, "start_hour", "grid", cfg.grid.origin_hour);
  }
  if (doc.contains("tariff")) {
    const auto& t = doc.at("tariff");
    if (!t.is_array()) throw ConfigError("tariff: expected an array of periods");
    cfg.tariff.periods.clear();
    for (const auto& p : t) {
      cfg.tariff.periods.push_back({get<double>(p, "start_hour", "tariff"),
                                    get<double>(p, "end_hour", "tariff"),
                                    get<double>(p, "price_usd_per_kwh", "tariff")});
    }
  }
  if (doc.contains("cop")) {
    const auto& c = object_at(doc, "cop");
    maybe(c, "t_low_c", "cop", cfg.cop.t_low);
    maybe(c, "cop_low", "cop", cfg.cop.cop_low);
    maybe(c, "t_high_c", "cop", cfg.cop.t_high);
    maybe(c, "cop_high", "cop", cfg.cop.cop_high);
    maybe(c, "cop_floor", "cop", cfg.cop.cop_floor);
  }
  if (doc.contains("gains")) {
    const auto& g = object_at(doc, "gains");
    maybe(g, "window_to_wall", "gains", cfg.gains.window_to_wall);
    double solar_w = cfg.gains.solar_mean_kw_per_m2 * 1000.0;
    double internal_w = cfg.gains.internal_kw_per_m2 * 1000.0;
    maybe(g, "solar_mean_w_per_m2", "gains", solar_w);
    maybe(g, "internal_w_per_m2", "gains", internal_w);
    cfg.gains.solar_mean_kw_per_m2 = solar_w / 1000.0;
    cfg.gains.internal_kw_per_m2 = internal_w / 1000.0;
    maybe(g, "noise_fraction", "gains", cfg.gains.noise_fraction);
    if (g.contains("exterior_wall_area_m2")) {
      cfg.exterior_wall_area_m2 =
          vector_of(g.at("exterior_wall_area_m2"), "gains.exterior_wall_area_m2");
    }
    if (g.contains("floor_area_m2")) {
      cfg.floor_area_m2 = vector_of(g.at("floor_area_m2"), "gains.floor_area_m2");
    }
  }
  if (doc.contains("comfort")) {
    const auto& c = object_at(doc, "comfort");
    maybe(c, "tight_c", "comfort", cfg.comfort.tight_c);
    maybe(c, "wide_c", "comfort", cfg.comfort.wide_c);
    if (c.contains("tight_windows")) {
      cfg.comfort.tight_windows.clear();
      for (const auto& w : c.at("tight_windows")) {
        const auto v = vector_of(w, "comfort.tight_windows");
        if (v.size() != 2) throw ConfigError("comfort.tight_windows: expected [start, end] pairs");
        cfg.comfort.tight_windows.emplace_back(v(0), v(1));
      }
    }
  }
  if (doc.contains("weather")) {
    const auto& w = object_at(doc, "weather");
    if (w.contains("path")) {
      std::filesystem::path p = get<std::string>(w, "path", "weather");
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.weather_path = p;
      if (!doc.contains("grid") || !doc.at("grid").contains("steps")) cfg.grid.steps = 0;
    }
    if (w.contains("synthetic")) {
      const auto& s = w.at("synthetic");
      auto& spec = cfg.synthetic_weather;
      maybe(s, "mean_c", "weather.synthetic", spec.mean_c);
      maybe(s, "amplitude_c", "weather.synthetic", spec.amplitude_c);
      maybe(s, "floor_c", "weather.synthetic", spec.floor_c);
      maybe(s, "snap_depth_c", "weather.synthetic", spec.snap_depth_c);
      maybe(s, "ghi_peak_w_per_m2", "weather.synthetic", spec.ghi_peak_w_per_m2);
      maybe(s, "daylight_hours", "weather.synthetic", spec.daylight_hours);
    }
  }
  if (doc.contains("power_bounds_kw")) {
    const auto& b = object_at(doc, "power_bounds_kw");
    cfg.power_bounds.lower_kw = -std::numeric_limits<double>::infinity();
    cfg.power_bounds.upper_kw = std::numeric_limits<double>::infinity();
    maybe(b, "lower", "power_bounds_kw", cfg.power_bounds.lower_kw);
    maybe(b, "upper", "power_bounds_kw", cfg.power_bounds.upper_kw);
  }
  if (doc.contains("constant_thermal_price") && !doc.at("constant_thermal_price").is_null()) {
    cfg.constant_thermal_price = get<double>(doc, "constant_thermal_price", "config");
  }
  if (doc.contains("seed")) cfg.gains.seed = get<std::uint64_t>(doc, "seed", "config");
  if (doc.contains("output_dir")) {
    cfg.output_dir = get<std::string>(doc, "output_dir", "config");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config: " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

void validate_config(const RunConfig& cfg) {
  try {
    validate_network(cfg.network);
  } catch (const InvalidNetwork& e) {
    throw ConfigError(std::string("network: ") + e.what());
  }
  const int n = cfg.network.zones();
  auto check = [](const std::string& field, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field + ": " + e.what());
    }
  };
  check("setpoints_c/controlled_zones", [&] { cfg.plan.validate(n); });
  check("tariff", [&] { cfg.tariff.validate(); });
  check("cop", [&] { cfg.cop.validate(); });
  check("gains", [&] { cfg.gains.validate(); });
  if (cfg.exterior_wall_area_m2.size() != n || cfg.floor_area_m2.size() != n) {
    throw ConfigError("gains: exterior_wall_area_m2 and floor_area_m2 need one entry per zone");
  }
  if (!(cfg.grid.dt_h > 0.0)) throw ConfigError("grid.dt_h: must be positive");
  if (cfg.grid.steps < 0 || (cfg.grid.steps == 0 && !cfg.weather_path)) {
    throw ConfigError("grid.steps: must be positive");
  }
  if (!(cfg.comfort.tight_c >= 0.0 && cfg.comfort.wide_c >= 0.0)) {
    throw ConfigError("comfort: bands must be nonnegative");
  }
  if (!(cfg.power_bounds.lower_kw <= cfg.power_bounds.upper_kw)) {
    throw ConfigError("power_bounds_kw: lower exceeds upper");
  }
  if (cfg.constant_thermal_price && !(*cfg.constant_thermal_price > 0.0)) {
    throw ConfigError("constant_thermal_price: must be positive");
  }
  if (cfg.weather_path && !std::filesystem::exists(*cfg.weather_path)) {
    throw ConfigError("weather.path: file not found: " + cfg.weather_path->string());
  }
}

}  // namespace zonemv::app
