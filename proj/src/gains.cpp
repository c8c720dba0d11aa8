#include "zonemv/gains.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace zonemv {

void GainSpec::validate() const {
  auto fraction = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!fraction(window_to_wall) || !fraction(noise_fraction)) {
    throw std::invalid_argument("gain fractions must lie in [0, 1]");
  }
  if (!(solar_mean_kw_per_m2 >= 0.0) || !(internal_kw_per_m2 >= 0.0)) {
    throw std::invalid_argument("gain densities must be nonnegative");
  }
}

Eigen::MatrixXd synthesize_gains(const GainSpec& spec, const WeatherSeries& weather,
                                 const Eigen::VectorXd& exterior_wall_area_m2,
                                 const Eigen::VectorXd& floor_area_m2) {
  spec.validate();
  if (weather.ghi.size() == 0) throw std::invalid_argument("empty weather series");
  weather.validate();
  const auto n = exterior_wall_area_m2.size();
  if (floor_area_m2.size() != n) throw std::invalid_argument("area vectors differ in length");
  if ((exterior_wall_area_m2.array() < 0.0).any() || (floor_area_m2.array() < 0.0).any()) {
    throw std::invalid_argument("areas must be nonnegative");
  }

  const int steps = weather.grid.steps;
  const double ghi_mean = weather.ghi.mean();
  const Eigen::VectorXd solar_flux =
      ghi_mean > 0.0 ? Eigen::VectorXd(weather.ghi * (spec.solar_mean_kw_per_m2 / ghi_mean))
                     : Eigen::VectorXd::Zero(steps);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  Eigen::MatrixXd w(steps, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double window = spec.window_to_wall * exterior_wall_area_m2(i);
    const double internal_mean = spec.internal_kw_per_m2 * floor_area_m2(i);
    const double sigma = spec.noise_fraction * internal_mean;
    for (int k = 0; k < steps; ++k) {
      const double internal = std::max(0.0, internal_mean + sigma * unit(rng));
      w(k, i) = solar_flux(k) * window + internal;
    }
  }
  return w;
}

}  // namespace zonemv
