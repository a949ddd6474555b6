#include "aurora/projection.hpp"

#include <cmath>
#include <limits>

namespace aurora::projection {

PointCloud to_camera_frame(const PointCloud& cloud,
                           const CameraCalibration& calib, double z_min) {
  PointCloud out;
  out.frame = Frame::CameraRectified;
  out.points.reserve(cloud.points.size());
  const auto& t = calib.extrinsic;
  const auto& r = calib.rect;
  for (const LidarPoint& p : cloud.points) {
    const double ex = t[0] * p.x + t[1] * p.y + t[2] * p.z + t[3];
    const double ey = t[4] * p.x + t[5] * p.y + t[6] * p.z + t[7];
    const double ez = t[8] * p.x + t[9] * p.y + t[10] * p.z + t[11];
    const double cx = r[0] * ex + r[1] * ey + r[2] * ez;
    const double cy = r[3] * ex + r[4] * ey + r[5] * ez;
    const double cz = r[6] * ex + r[7] * ey + r[8] * ez;
    if (cz <= z_min) continue;
    out.points.push_back({cx, cy, cz, p.intensity});
  }
  return out;
}

std::vector<PixelSample> project_points(const PointCloud& cam_cloud,
                                        const CameraCalibration& calib) {
  std::vector<PixelSample> samples;
  samples.reserve(cam_cloud.points.size());
  for (std::size_t i = 0; i < cam_cloud.points.size(); ++i) {
    const LidarPoint& p = cam_cloud.points[i];
    const long u = std::lround(calib.fx * p.x / p.z + calib.cx);
    const long v = std::lround(calib.fy * p.y / p.z + calib.cy);
    if (u < 0 || u >= calib.image_width || v < 0 || v >= calib.image_height) {
      continue;
    }
    samples.push_back({static_cast<int>(u), static_cast<int>(v), p.z, i});
  }
  return samples;
}

DepthGrid rasterize(const std::vector<PixelSample>& samples, int width,
                    int height) {
  DepthGrid grid(width, height);
  std::vector<std::size_t> winner(static_cast<std::size_t>(width) * height,
                                  std::numeric_limits<std::size_t>::max());
  for (const PixelSample& s : samples) {
    const std::size_t i = static_cast<std::size_t>(s.v) * width + s.u;
    const double current = grid.values()[i];
    if (current == 0.0 || s.depth < current ||
        (s.depth == current && s.source_index < winner[i])) {
      grid.values()[i] = s.depth;
      winner[i] = s.source_index;
    }
  }
  return grid;
}

DepthGrid project_to_depth(const PointCloud& cloud,
                           const CameraCalibration& calib) {
  const PointCloud cam = to_camera_frame(cloud, calib);
  const std::vector<PixelSample> samples = project_points(cam, calib);
  return rasterize(samples, calib.image_width, calib.image_height);
}

}  // namespace aurora::projection
