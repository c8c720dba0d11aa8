#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "zonemv/weather.hpp"

namespace zonemv {

/// Exogenous heat-gain recipe. Solar gains rescale the horizontal irradiance
/// to `solar_mean_kw_per_m2` and multiply by window area; internal gains are
/// `internal_kw_per_m2` of floor area with Gaussian noise.
struct GainSpec {
  double window_to_wall = 0.25;
  double solar_mean_kw_per_m2 = 0.010;
  double internal_kw_per_m2 = 0.010;
  double noise_fraction = 0.10;  // standard deviation relative to the mean internal gain
  std::uint64_t seed = 42;

  void validate() const;
};

/// Per-zone exogenous power w (K x n, kW). Internal gains are clipped at 0
/// after adding noise. Deterministic for a given seed.
Eigen::MatrixXd synthesize_gains(const GainSpec& spec, const WeatherSeries& weather,
                                 const Eigen::VectorXd& exterior_wall_area_m2,
                                 const Eigen::VectorXd& floor_area_m2);

}  // namespace zonemv
