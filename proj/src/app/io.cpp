#include "zonemv/app/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace zonemv::app {

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj, const Eigen::VectorXd& price) {
  check_shape(traj);
  const int n = traj.zones();
  const int steps = traj.steps();
  if (price.size() != steps) throw std::invalid_argument("price column length differs from steps");

  std::ostringstream os;
  os << "step,time_h";
  for (int i = 1; i <= n; ++i) os << ",T_" << i << "_c";
  for (int i = 1; i <= n; ++i) os << ",q_" << i << "_kw";
  for (int i = 1; i <= n; ++i) os << ",w_" << i << "_kw";
  os << ",t0_c,price_usd_per_kwh_thermal\n";

  for (int k = 0; k <= steps; ++k) {
    os << k << ',' << format_number(traj.grid.time_h(k));
    for (int i = 0; i < n; ++i) os << ',' << format_number(traj.temps(k, i));
    if (k < steps) {
      for (int i = 0; i < n; ++i) os << ',' << format_number(traj.powers(k, i));
      for (int i = 0; i < n; ++i) os << ',' << format_number(traj.gains(k, i));
      os << ',' << format_number(traj.outdoor(k)) << ',' << format_number(price(k));
    } else {
      for (int i = 0; i < 2 * n + 2; ++i) os << ',';
    }
    os << '\n';
  }
  return os.str();
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      const Eigen::VectorXd& price) {
  write_atomic(path, trajectory_csv(traj, price));
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_field(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw TrajectoryFormatError(where + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

TrajectoryFile read_trajectory(const std::filesystem::path& path, double origin_hour) {
  std::ifstream in(path);
  if (!in) throw TrajectoryFormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw TrajectoryFormatError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  const int width = static_cast<int>(header.size());
  if (width < 7 || (width - 4) % 3 != 0) {
    throw TrajectoryFormatError(path.string() + ":1: unexpected header");
  }
  const int n = (width - 4) / 3;
  std::ostringstream expected;
  expected << "step,time_h";
  for (int i = 1; i <= n; ++i) expected << ",T_" << i << "_c";
  for (int i = 1; i <= n; ++i) expected << ",q_" << i << "_kw";
  for (int i = 1; i <= n; ++i) expected << ",w_" << i << "_kw";
  expected << ",t0_c,price_usd_per_kwh_thermal";
  if (line != expected.str()) throw TrajectoryFormatError(path.string() + ":1: unexpected header");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split(line));
  }
  if (rows.size() < 2) throw TrajectoryFormatError(path.string() + ": needs at least one step");
  const int steps = static_cast<int>(rows.size()) - 1;

  TrajectoryFile file;
  Trajectory& t = file.trajectory;
  t.temps.resize(steps + 1, n);
  t.powers.resize(steps, n);
  t.gains.resize(steps, n);
  t.outdoor.resize(steps);
  file.price.resize(steps);
  std::vector<double> times(static_cast<std::size_t>(steps) + 1);

  for (int k = 0; k <= steps; ++k) {
    const auto& f = rows[static_cast<std::size_t>(k)];
    const std::string where = path.string() + ":" + std::to_string(k + 2);
    if (static_cast<int>(f.size()) != width) throw TrajectoryFormatError(where + ": wrong field count");
    if (parse_field(f[0], where) != k) throw TrajectoryFormatError(where + ": step out of sequence");
    times[static_cast<std::size_t>(k)] = parse_field(f[1], where);
    for (int i = 0; i < n; ++i) t.temps(k, i) = parse_field(f[2 + i], where);
    if (k == steps) {
      for (int c = 2 + n; c < width; ++c) {
        if (!f[c].empty()) throw TrajectoryFormatError(where + ": final row carries inputs");
      }
      break;
    }
    for (int i = 0; i < n; ++i) {
      t.powers(k, i) = parse_field(f[2 + n + i], where);
      t.gains(k, i) = parse_field(f[2 + 2 * n + i], where);
    }
    t.outdoor(k) = parse_field(f[2 + 3 * n], where);
    file.price(k) = parse_field(f[3 + 3 * n], where);
  }

  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw TrajectoryFormatError(path.string() + ": time column not increasing");
  for (int k = 0; k <= steps; ++k) {
    if (std::abs(times[static_cast<std::size_t>(k)] - dt * k) > 1e-9 * (1.0 + dt * k)) {
      throw TrajectoryFormatError(path.string() + ": time column is not uniform");
    }
  }
  t.grid = TimeGrid{dt, steps, origin_hour};
  return file;
}

}  // namespace zonemv::app
