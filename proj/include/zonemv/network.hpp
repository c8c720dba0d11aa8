#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace zonemv {

/// Lumped RC model of a building.
///
/// Zones are addressed zero-based in every public API. The conductance
/// matrix is indexed by *node*: node 0 is the outdoor air and zone `i` is
/// node `i + 1`. Units are kWh/°C for capacitances and kW/°C for
/// conductances.
struct ThermalNetwork {
  Eigen::VectorXd capacitance;  // n
  Eigen::MatrixXd conductance;  // (n + 1) x (n + 1), symmetric, zero diagonal

  int zones() const { return static_cast<int>(capacitance.size()); }

  /// Conductance between zones `i` and `j` (zero-based).
  double between(int i, int j) const { return conductance(i + 1, j + 1); }
  /// Conductance from zone `i` to the outdoor node.
  double to_outdoor(int i) const { return conductance(i + 1, 0); }
  /// Sum of all conductances attached to zone `i`, outdoor included.
  double total_conductance(int i) const { return conductance.row(i + 1).sum(); }
};

/// Uniform time grid. Sample k sits at origin_hour + k * dt_h; the
/// piecewise-constant value with index k applies on [k dt, (k+1) dt).
struct TimeGrid {
  double dt_h = 0.25;
  int steps = 1;
  double origin_hour = 0.0;

  double horizon_h() const { return dt_h * steps; }
  double time_h(int k) const { return dt_h * k; }
  /// Clock hour in [0, 24) at sample k.
  double hour_of_day(int k) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct NetworkIssue {
  enum class Kind {
    kDimensionMismatch,
    kNonpositiveCapacitance,
    kNegativeConductance,
    kAsymmetric,
    kSelfConductance,
    kNonFinite,
  };

  Kind kind;
  int row = -1;  // node or zone index, depending on kind
  int col = -1;

  std::string message() const;
};

class InvalidNetwork : public std::invalid_argument {
 public:
  explicit InvalidNetwork(std::vector<NetworkIssue> issues);
  const std::vector<NetworkIssue>& issues() const { return issues_; }

 private:
  std::vector<NetworkIssue> issues_;
};

/// Lists every violated network invariant; empty when the network is valid.
std::vector<NetworkIssue> network_issues(const ThermalNetwork& net);

/// Returns `net` unchanged when valid, otherwise throws InvalidNetwork.
const ThermalNetwork& validate_network(const ThermalNetwork& net);

void validate_grid(const TimeGrid& grid);

}  // namespace zonemv
