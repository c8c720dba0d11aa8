#pragma once

#include <vector>

#include <Eigen/Core>

#include "zonemv/network.hpp"

namespace zonemv {

/// Time-of-use electricity rate. Periods are [start, end) in hours of day;
/// a period with end <= start wraps past midnight.
struct Tariff {
  struct Period {
    double start_hour;
    double end_hour;
    double price;  // $/kWh electric
  };
  std::vector<Period> periods;

  /// Throws std::invalid_argument unless the periods cover each hour of the
  /// day exactly once with positive prices.
  void validate() const;
  double price_at(double hour_of_day) const;

  /// 0.12 $/kWh 10 PM-6 AM, 0.14 6 AM-2 PM and 7-10 PM, 0.16 2-7 PM.
  static Tariff chicago_time_of_use();
  static Tariff flat(double price);
};

/// Heat-pump coefficient of performance, linear in outdoor temperature
/// between two anchors, clamped to [cop_floor, cop_high].
struct CopCurve {
  double t_low = -15.0;
  double cop_low = 1.8;
  double t_high = 8.3;
  double cop_high = 3.3;
  double cop_floor = 1.0;

  void validate() const;
};

double cop(const CopCurve& curve, double t_out);

/// a(k) = tariff price at the clock hour of step k divided by cop(T0(k)).
Eigen::VectorXd thermal_price(const Tariff& tariff, const CopCurve& curve,
                              const Eigen::VectorXd& outdoor, const TimeGrid& grid);

}  // namespace zonemv
