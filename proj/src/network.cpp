#include "zonemv/network.hpp"

#include <cmath>
#include <sstream>

namespace zonemv {

double TimeGrid::hour_of_day(int k) const {
  double h = std::fmod(origin_hour + dt_h * k, 24.0);
  if (h < 0.0) h += 24.0;
  // Guard against 23.999999999 from accumulated rounding of the product.
  if (24.0 - h < 1e-9) h = 0.0;
  return h;
}

std::string NetworkIssue::message() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kDimensionMismatch:
      os << "conductance matrix must be (n+1)x(n+1) for n zones";
      break;
    case Kind::kNonpositiveCapacitance:
      os << "nonpositive capacitance at zone " << row + 1;
      break;
    case Kind::kNegativeConductance:
      os << "negative conductance at (" << row << "," << col << ")";
      break;
    case Kind::kAsymmetric:
      os << "asymmetric conductance at (" << row << "," << col << ")";
      break;
    case Kind::kSelfConductance:
      os << "nonzero self-conductance at node " << row;
      break;
    case Kind::kNonFinite:
      os << "non-finite network parameter at (" << row << "," << col << ")";
      break;
  }
  return os.str();
}

namespace {

std::string join_messages(const std::vector<NetworkIssue>& issues) {
  std::string out = "invalid thermal network:";
  for (const auto& issue : issues) out += "\n  " + issue.message();
  return out;
}

}  // namespace

InvalidNetwork::InvalidNetwork(std::vector<NetworkIssue> issues)
    : std::invalid_argument(join_messages(issues)), issues_(std::move(issues)) {}

std::vector<NetworkIssue> network_issues(const ThermalNetwork& net) {
  using Kind = NetworkIssue::Kind;
  std::vector<NetworkIssue> issues;
  const int n = net.zones();
  const auto& g = net.conductance;
  if (n == 0 || g.rows() != n + 1 || g.cols() != n + 1) {
    issues.push_back({Kind::kDimensionMismatch});
    return issues;
  }
  for (int i = 0; i < n; ++i) {
    const double c = net.capacitance(i);
    if (!std::isfinite(c)) {
      issues.push_back({Kind::kNonFinite, i, -1});
    } else if (c <= 0.0) {
      issues.push_back({Kind::kNonpositiveCapacitance, i, -1});
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double v = g(i, j);
      if (!std::isfinite(v)) {
        issues.push_back({Kind::kNonFinite, i, j});
        continue;
      }
      if (i == j) {
        if (v != 0.0) issues.push_back({Kind::kSelfConductance, i, i});
        continue;
      }
      if (v < 0.0) issues.push_back({Kind::kNegativeConductance, i, j});
      // Report each asymmetric pair once, from the upper triangle.
      if (i < j && std::isfinite(g(j, i)) && v != g(j, i)) {
        issues.push_back({Kind::kAsymmetric, i, j});
      }
    }
  }
  return issues;
}

const ThermalNetwork& validate_network(const ThermalNetwork& net) {
  auto issues = network_issues(net);
  if (!issues.empty()) throw InvalidNetwork(std::move(issues));
  return net;
}

void validate_grid(const TimeGrid& grid) {
  if (!(grid.dt_h > 0.0) || !std::isfinite(grid.dt_h)) {
    throw std::invalid_argument("time step must be positive");
  }
  if (grid.steps < 1) throw std::invalid_argument("time grid needs at least one step");
  if (!std::isfinite(grid.origin_hour)) {
    throw std::invalid_argument("time grid origin must be finite");
  }
}

}  // namespace zonemv
