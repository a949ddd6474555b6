#include "aurora/lidar_weather.hpp"

#include <algorithm>
#include <cmath>

namespace aurora::lidar {

namespace {

const std::uint64_t kFogTag = rng::hash_string("lidar.fog");
const std::uint64_t kRainTag = rng::hash_string("lidar.rain");
const std::uint64_t kSnowTag = rng::hash_string("lidar.snow");

// Move a point along its ray to a new range.
LidarPoint relocate(const LidarPoint& p, double old_range, double new_range,
                    double intensity) {
  const double s = new_range / old_range;
  return {p.x * s, p.y * s, p.z * s, intensity};
}

}  // namespace

PointCloud corrupt_fog(const PointCloud& cloud, double alpha,
                       const LidarWeatherParams& params, const rng::Key& key) {
  if (alpha <= 0.0) return cloud;

  PointCloud out;
  out.frame = cloud.frame;
  out.points.reserve(cloud.points.size());

  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const LidarPoint& p = cloud.points[i];
    const double r = p.range();
    const double p_hard = p.intensity * std::exp(-2.0 * alpha * r);

    // Candidate volumetric backscatter return inside the scatter window,
    // truncated to ranges in front of the hard target.
    rng::Stream stream(key, kFogTag, i);
    const double lo = params.fog_scatter_range.first;
    const double hi = std::min(params.fog_scatter_range.second, r);
    double p_soft = 0.0;
    double r_soft = 0.0;
    if (lo < hi) {
      r_soft = stream.uniform(lo, hi);
      p_soft = params.fog_backscatter_gain * alpha *
               std::exp(-2.0 * alpha * r_soft);
    }

    if (p_hard < params.noise_floor && p_soft < params.noise_floor) {
      continue;  // lost return
    }
    if (p_soft > p_hard) {
      out.points.push_back(relocate(p, r, r_soft, std::min(p_soft, 1.0)));
    } else {
      out.points.push_back({p.x, p.y, p.z, p_hard});
    }
  }
  return out;
}

PointCloud corrupt_rain(const PointCloud& cloud, double rain_rate,
                        const LidarWeatherParams& params, const rng::Key& key) {
  if (rain_rate <= 0.0) return cloud;

  const double alpha =
      params.rain_extinction_c1 * std::pow(rain_rate, params.rain_extinction_c2);
  const double sigma_r = params.rain_range_jitter_base * (1.0 + rain_rate / 100.0);

  PointCloud out;
  out.frame = cloud.frame;
  out.points.reserve(cloud.points.size());

  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const LidarPoint& p = cloud.points[i];
    const double r = p.range();
    const double p_hard = p.intensity * std::exp(-2.0 * alpha * r);

    // Fixed draw order per point: jitter, scatter decision, scatter
    // position, scatter intensity.
    rng::Stream stream(key, kRainTag, i);
    const double jitter = stream.normal(0.0, sigma_r);
    const double u_scatter = stream.uniform();
    const double u_pos = stream.uniform();
    const double u_int = stream.uniform();

    if (p_hard >= params.noise_floor) {
      const double r_jittered = std::max(r + jitter, 0.05);
      out.points.push_back(relocate(p, r, r_jittered, p_hard));
    }

    // Droplet-induced spurious return, independent of hard-target survival.
    const double p_spurious =
        std::min(1.0, params.rain_scatter_gain * (1.0 - std::exp(-alpha * r)));
    if (u_scatter < p_spurious && r > 0.5) {
      const double r_spur = 0.5 + (r - 0.5) * u_pos;
      const double intensity =
          params.noise_floor * (1.0 + u_int);  // U(nf, 2 nf)
      out.points.push_back(relocate(p, r, r_spur, intensity));
    }
  }
  return out;
}

PointCloud corrupt_snow(const PointCloud& cloud, double snow_rate,
                        const LidarWeatherParams& params, const rng::Key& key) {
  if (snow_rate <= 0.0) return cloud;

  const double alpha =
      params.snow_extinction_s1 * std::pow(snow_rate, params.snow_extinction_s2);

  PointCloud out;
  out.frame = cloud.frame;
  out.points.reserve(cloud.points.size());

  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const LidarPoint& p = cloud.points[i];
    const double r = p.range();

    rng::Stream stream(key, kSnowTag, i);
    const double u_occ = stream.uniform();
    const double u_pos = stream.uniform();
    const double u_int = stream.uniform();

    // Beam occlusion by snow particles: the return comes from a particle
    // in front of the target instead. Clutter is near-range biased by
    // construction of the clutter window.
    const double p_occ = std::min(
        1.0, params.snow_occlusion_gain * (1.0 - std::exp(-alpha * r)));
    const double lo = params.snow_clutter_range.first;
    const double hi = std::min(params.snow_clutter_range.second, r);
    if (u_occ < p_occ && lo < hi) {
      const double r_clutter = lo + (hi - lo) * u_pos;
      const double intensity =
          params.noise_floor * (1.0 + 2.0 * u_int);  // U(nf, 3 nf)
      out.points.push_back(relocate(p, r, r_clutter, intensity));
      continue;
    }

    const double p_hard = p.intensity * std::exp(-2.0 * alpha * r);
    if (p_hard >= params.noise_floor) {
      out.points.push_back({p.x, p.y, p.z, p_hard});
    }
  }
  return out;
}

PointCloud corrupt_cloud(const PointCloud& cloud, const WeatherSpec& spec,
                         const LidarWeatherParams& params, const rng::Key& key) {
  switch (spec.weather) {
    case Weather::Clear: return cloud;
    case Weather::Fog: return corrupt_fog(cloud, spec.severity_value, params, key);
    case Weather::Rain: return corrupt_rain(cloud, spec.severity_value, params, key);
    case Weather::Snow: return corrupt_snow(cloud, spec.severity_value, params, key);
  }
  return cloud;
}

}  // namespace aurora::lidar
