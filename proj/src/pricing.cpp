#include "zonemv/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "zonemv/errors.hpp"

namespace zonemv {

namespace {

bool in_period(const Tariff::Period& p, double hour) {
  if (p.start_hour < p.end_hour) return hour >= p.start_hour && hour < p.end_hour;
  return hour >= p.start_hour || hour < p.end_hour;
}

}  // namespace

void Tariff::validate() const {
  if (periods.empty()) throw std::invalid_argument("tariff has no periods");
  std::vector<std::pair<double, double>> spans;
  for (const auto& p : periods) {
    if (!(p.price > 0.0) || !std::isfinite(p.price)) {
      throw std::invalid_argument("tariff prices must be positive");
    }
    if (!(p.start_hour >= 0.0 && p.start_hour < 24.0 && p.end_hour >= 0.0 &&
          p.end_hour <= 24.0)) {
      throw std::invalid_argument("tariff hours must lie in [0, 24]");
    }
    if (p.start_hour < p.end_hour) {
      spans.emplace_back(p.start_hour, p.end_hour);
    } else {
      spans.emplace_back(p.start_hour, 24.0);
      if (p.end_hour > 0.0) spans.emplace_back(0.0, p.end_hour);
    }
  }
  std::sort(spans.begin(), spans.end());
  double cursor = 0.0;
  for (const auto& [lo, hi] : spans) {
    if (lo > cursor) throw std::invalid_argument("tariff leaves a gap in the day");
    if (lo < cursor) throw std::invalid_argument("tariff periods overlap");
    cursor = hi;
  }
  if (cursor < 24.0) throw std::invalid_argument("tariff leaves a gap in the day");
}

double Tariff::price_at(double hour_of_day) const {
  for (const auto& p : periods) {
    if (in_period(p, hour_of_day)) return p.price;
  }
  throw std::invalid_argument("no tariff period covers hour " + std::to_string(hour_of_day));
}

Tariff Tariff::chicago_time_of_use() {
  return Tariff{{{22.0, 6.0, 0.12}, {6.0, 14.0, 0.14}, {14.0, 19.0, 0.16}, {19.0, 22.0, 0.14}}};
}

Tariff Tariff::flat(double price) { return Tariff{{{0.0, 0.0, price}}}; }

void CopCurve::validate() const {
  if (!(t_low < t_high)) throw std::invalid_argument("COP anchors need t_low < t_high");
  if (!(cop_low > 0.0 && cop_low < cop_high)) {
    throw std::invalid_argument("COP anchors need 0 < cop_low < cop_high");
  }
  if (!(cop_floor >= 1.0)) throw std::invalid_argument("COP floor must be at least 1");
}

double cop(const CopCurve& curve, double t_out) {
  const double slope = (curve.cop_high - curve.cop_low) / (curve.t_high - curve.t_low);
  const double linear = curve.cop_low + slope * (t_out - curve.t_low);
  return std::clamp(linear, curve.cop_floor, curve.cop_high);
}

Eigen::VectorXd thermal_price(const Tariff& tariff, const CopCurve& curve,
                              const Eigen::VectorXd& outdoor, const TimeGrid& grid) {
  if (outdoor.size() != grid.steps) {
    throw GridMismatch("outdoor temperature length does not match the grid");
  }
  tariff.validate();
  curve.validate();
  Eigen::VectorXd a(grid.steps);
  for (int k = 0; k < grid.steps; ++k) {
    a(k) = tariff.price_at(grid.hour_of_day(k)) / cop(curve, outdoor(k));
  }
  return a;
}

}  // namespace zonemv
