#pragma once

#include <utility>

#include "aurora/rng.hpp"
#include "aurora/types.hpp"

namespace aurora::lidar {

// Response-model constants for the point-cloud corruptions. The structure
// follows the hard-target / soft-target decomposition; the constants are
// tuning defaults, all exposed here.
struct LidarWeatherParams {
  // Detection threshold on received power (intensity units). Returns whose
  // hard and soft powers both fall below it are lost.
  double noise_floor = 0.002;

  // Fog: p_soft = fog_backscatter_gain * alpha * exp(-2 alpha R_f).
  double fog_backscatter_gain = 0.5;
  std::pair<double, double> fog_scatter_range{1.5, 25.0};  // meters

  // Rain: alpha_rain = c1 * rate^c2 (Marshall-Palmer-style power law).
  double rain_extinction_c1 = 2.0e-3;
  double rain_extinction_c2 = 0.6;
  double rain_scatter_gain = 0.3;
  double rain_range_jitter_base = 0.02;  // sigma_0, meters

  // Snow: alpha_snow = s1 * rate^s2.
  double snow_extinction_s1 = 1.5e-2;
  double snow_extinction_s2 = 0.7;
  std::pair<double, double> snow_clutter_range{0.5, 12.0};  // meters
  double snow_occlusion_gain = 0.6;
};

// W_lidar. All three are pure functions of (cloud, severity, params, key);
// severity 0 returns the input bitwise-unchanged. Relocated and spurious
// returns stay on the ray of their source point at a smaller range.
PointCloud corrupt_fog(const PointCloud& cloud, double alpha,
                       const LidarWeatherParams& params, const rng::Key& key);

PointCloud corrupt_rain(const PointCloud& cloud, double rain_rate,
                        const LidarWeatherParams& params, const rng::Key& key);

PointCloud corrupt_snow(const PointCloud& cloud, double snow_rate,
                        const LidarWeatherParams& params, const rng::Key& key);

// Dispatch on the spec's weather type; clear is the identity.
PointCloud corrupt_cloud(const PointCloud& cloud, const WeatherSpec& spec,
                         const LidarWeatherParams& params, const rng::Key& key);

}  // namespace aurora::lidar
