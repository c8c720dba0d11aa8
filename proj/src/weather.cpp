#include "zonemv/weather.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

namespace zonemv {

void WeatherSeries::validate() const {
  validate_grid(grid);
  if (outdoor.size() != grid.steps || ghi.size() != grid.steps) {
    throw std::invalid_argument("weather series length does not match its grid");
  }
  if (!outdoor.allFinite() || !ghi.allFinite()) {
    throw std::invalid_argument("weather series has non-finite values");
  }
  if ((ghi.array() < 0.0).any()) throw std::invalid_argument("irradiance must be nonnegative");
}

namespace {

int parse_int(std::string_view s, std::size_t pos, std::size_t len) {
  if (pos + len > s.size()) throw std::invalid_argument("truncated timestamp");
  int v = 0;
  const char* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, v);
  if (ec != std::errc() || ptr != first + len) throw std::invalid_argument("bad timestamp digits");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

double parse_iso8601_hours(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  if (text.size() < 16 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':') {
    throw std::invalid_argument("timestamp is not ISO-8601");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{parse_int(text, 0, 4)},
                           month{static_cast<unsigned>(parse_int(text, 5, 2))},
                           day{static_cast<unsigned>(parse_int(text, 8, 2))}};
  if (!ymd.ok()) throw std::invalid_argument("timestamp has an invalid date");
  const int hh = parse_int(text, 11, 2);
  const int mm = parse_int(text, 14, 2);
  double ss = 0.0;
  if (text.size() > 16) {
    if (text[16] != ':') throw std::invalid_argument("timestamp is not ISO-8601");
    const auto sec = text.substr(17);
    auto [ptr, ec] = std::from_chars(sec.data(), sec.data() + sec.size(), ss);
    if (ec != std::errc() || ptr != sec.data() + sec.size()) {
      throw std::invalid_argument("bad timestamp seconds");
    }
  }
  if (hh > 23 || mm > 59 || ss < 0.0 || ss >= 61.0) {
    throw std::invalid_argument("timestamp time of day out of range");
  }
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return 24.0 * static_cast<double>(days) + hh + mm / 60.0 + ss / 3600.0;
}

WeatherSeries load_weather(const std::filesystem::path& path, const TimeGrid& grid) {
  std::ifstream in(path);
  if (!in) throw WeatherFormatError("cannot open weather file " + path.string());
  const std::string where = path.string() + ":";

  std::string line;
  if (!std::getline(in, line)) throw WeatherFormatError(where + " empty file");
  std::string_view header = trim(line);
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  if (header != "timestamp,outdoor_temp_c,ghi_w_per_m2") {
    throw WeatherFormatError(where + "1: expected header timestamp,outdoor_temp_c,ghi_w_per_m2");
  }

  std::vector<double> hours, temps, ghis;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string at = where + std::to_string(line_no) + ": ";
    const auto cells = split(line);
    if (cells.size() != 3) throw WeatherFormatError(at + "expected 3 comma-separated fields");
    static constexpr const char* kNames[] = {"timestamp", "outdoor_temp_c", "ghi_w_per_m2"};
    for (int c = 0; c < 3; ++c) {
      if (cells[c].empty()) throw WeatherFormatError(at + "missing " + kNames[c]);
    }
    double h = 0.0;
    try {
      h = parse_iso8601_hours(cells[0]);
    } catch (const std::invalid_argument& e) {
      throw WeatherFormatError(at + e.what());
    }
    double values[2];
    for (int c = 0; c < 2; ++c) {
      const auto cell = cells[c + 1];
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), values[c]);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(values[c])) {
        throw WeatherFormatError(at + "malformed " + kNames[c + 1]);
      }
    }
    if (values[1] < 0.0) throw WeatherFormatError(at + "negative ghi_w_per_m2");
    if (!hours.empty() && h <= hours.back()) {
      throw WeatherFormatError(at + "timestamps must be strictly increasing");
    }
    hours.push_back(h);
    temps.push_back(values[0]);
    ghis.push_back(values[1]);
  }
  if (hours.empty()) throw WeatherFormatError(where + " no data rows");
  if (!(grid.dt_h > 0.0)) throw std::invalid_argument("time step must be positive");

  const double source_step = hours.size() > 1 ? hours.back() - hours[hours.size() - 2] : grid.dt_h;
  const double span = hours.back() - hours.front() + source_step;

  WeatherSeries ws;
  ws.grid = grid;
  ws.grid.origin_hour = std::fmod(hours.front(), 24.0);
  if (grid.steps == 0) {
    ws.grid.steps = static_cast<int>(std::floor(span / grid.dt_h + 1e-9));
  }
  if (ws.grid.steps < 1) throw WeatherFormatError(where + " series shorter than one step");
  if (grid.dt_h * ws.grid.steps > span + 1e-9) {
    throw WeatherFormatError(where + " series does not cover the requested horizon");
  }

  ws.outdoor.resize(ws.grid.steps);
  ws.ghi.resize(ws.grid.steps);
  std::size_t row = 0;
  for (int k = 0; k < ws.grid.steps; ++k) {
    const double t = hours.front() + ws.grid.time_h(k);
    while (row + 1 < hours.size() && hours[row + 1] <= t + 1e-9) ++row;
    ws.outdoor(k) = temps[row];
    ws.ghi(k) = ghis[row];
  }
  return ws;
}

WeatherSeries synthetic_weather(const SyntheticWeatherSpec& spec, const TimeGrid& grid) {
  validate_grid(grid);
  using std::numbers::pi;
  WeatherSeries ws;
  ws.grid = grid;
  ws.outdoor.resize(grid.steps);
  ws.ghi.resize(grid.steps);
  const double horizon = grid.horizon_h();
  for (int k = 0; k < grid.steps; ++k) {
    const double t = grid.time_h(k);
    const double hour = grid.hour_of_day(k);
    // Smooth dip to -snap_depth at mid-horizon and back to zero at the ends.
    const double snap = -spec.snap_depth_c * 0.5 * (1.0 - std::cos(2.0 * pi * t / horizon));
    const double diurnal = spec.amplitude_c * std::cos(2.0 * pi * (hour - 15.0) / 24.0);
    ws.outdoor(k) = std::max(spec.floor_c, spec.mean_c + snap + diurnal);

    const double from_noon = hour - 12.0;
    const double half = 0.5 * spec.daylight_hours;
    if (std::abs(from_noon) < half) {
      const double s = std::cos(pi * from_noon / spec.daylight_hours);
      ws.ghi(k) = spec.ghi_peak_w_per_m2 * s * s;
    } else {
      ws.ghi(k) = 0.0;
    }
  }
  return ws;
}

}  // namespace zonemv
