#pragma once

#include <filesystem>
#include <stdexcept>

#include <Eigen/Core>

#include "zonemv/network.hpp"

namespace zonemv {

/// Outdoor conditions aligned to a time grid.
struct WeatherSeries {
  TimeGrid grid;
  Eigen::VectorXd outdoor;  // °C, K samples
  Eigen::VectorXd ghi;      // W/m², K samples, nonnegative

  void validate() const;
};

class WeatherFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a `timestamp,outdoor_temp_c,ghi_w_per_m2` CSV and resamples it by
/// zero-order hold onto a grid with step `grid.dt_h` starting at the first
/// timestamp. The returned grid takes its origin hour from that timestamp.
/// When `grid.steps` is 0 the step count is derived from the file span
/// (last timestamp plus one source interval).
WeatherSeries load_weather(const std::filesystem::path& path, const TimeGrid& grid);

/// Parses an ISO-8601 date-time (`YYYY-MM-DDTHH:MM[:SS]`, optional `Z`) into
/// hours since 1970-01-01T00:00.
double parse_iso8601_hours(std::string_view text);

/// Cold-snap weather used when no measured series is supplied: a diurnal
/// sinusoid (warmest at 3 PM) around a mean that dips by `snap_depth_c`
/// mid-horizon, floored at `floor_c`, and a sin²-shaped daylight irradiance
/// window centred on solar noon.
struct SyntheticWeatherSpec {
  double mean_c = -12.0;
  double amplitude_c = 8.0;
  double floor_c = -23.0;
  double snap_depth_c = 3.5;
  double ghi_peak_w_per_m2 = 350.0;
  double daylight_hours = 7.66;
};

WeatherSeries synthetic_weather(const SyntheticWeatherSpec& spec, const TimeGrid& grid);

}  // namespace zonemv
