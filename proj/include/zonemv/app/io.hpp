#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "zonemv/trajectory.hpp"

namespace zonemv::app {

/// Malformed trajectory file.
class TrajectoryFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trajectory as stored on disk, together with its thermal price column.
struct TrajectoryFile {
  Trajectory trajectory;  // temp_integrals left empty
  Eigen::VectorXd price;  // $/kWh thermal, K entries
};

/// Writes `contents` to `path` through a sibling temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Formats with 12 significant digits.
std::string format_number(double v);

std::string trajectory_csv(const Trajectory& traj, const Eigen::VectorXd& price);
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj,
                      const Eigen::VectorXd& price);

/// Reads a trajectory CSV. The grid gets dt_h from the time column, steps
/// from the row count, and `origin_hour`.
TrajectoryFile read_trajectory(const std::filesystem::path& path, double origin_hour = 0.0);

}  // namespace zonemv::app
