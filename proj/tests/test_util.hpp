#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aurora/codecs.hpp"
#include "aurora/rng.hpp"
#include "aurora/types.hpp"

namespace testutil {

// Synthetic cloud with points uniformly distributed in range
// [range_lo, range_hi], random directions in the forward hemisphere.
inline aurora::PointCloud make_cloud(std::size_t n, double range_lo,
                                     double range_hi, double intensity,
                                     std::uint64_t seed) {
  aurora::PointCloud cloud;
  cloud.points.reserve(n);
  aurora::rng::Stream stream({seed, 0}, aurora::rng::hash_string("testcloud"),
                             0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = stream.uniform(range_lo, range_hi);
    const double az = stream.uniform(-M_PI / 3, M_PI / 3);
    const double el = stream.uniform(-0.3, 0.1);
    const double x = r * std::cos(el) * std::cos(az);
    const double y = r * std::cos(el) * std::sin(az);
    const double z = r * std::sin(el);
    cloud.points.push_back({x, y, z, intensity});
  }
  return cloud;
}

inline aurora::ImageBuffer make_image(int w, int h, std::uint64_t seed) {
  aurora::ImageBuffer img(w, h);
  aurora::rng::Stream stream({seed, 0}, aurora::rng::hash_string("testimage"),
                             0);
  for (double& v : img.values()) v = stream.uniform();
  return img;
}

inline aurora::DepthGrid make_depth(int w, int h, double lo, double hi,
                                    double valid_fraction, std::uint64_t seed) {
  aurora::DepthGrid grid(w, h);
  aurora::rng::Stream stream({seed, 0}, aurora::rng::hash_string("testdepth"),
                             0);
  for (double& v : grid.values()) {
    v = stream.uniform() < valid_fraction ? stream.uniform(lo, hi) : 0.0;
  }
  return grid;
}

// Forward-facing camera looking down +z with sensor frame == camera frame.
inline aurora::CameraCalibration make_calibration(int w, int h) {
  aurora::CameraCalibration calib;
  calib.fx = calib.fy = 50.0;
  calib.cx = w / 2.0;
  calib.cy = h / 2.0;
  calib.image_width = w;
  calib.image_height = h;
  return calib;
}

// Cloud whose points project inside a w x h image under make_calibration.
inline aurora::PointCloud make_frustum_cloud(std::size_t n, int w, int h,
                                             std::uint64_t seed) {
  aurora::PointCloud cloud;
  const aurora::CameraCalibration calib = make_calibration(w, h);
  aurora::rng::Stream stream({seed, 0},
                             aurora::rng::hash_string("testfrustum"), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = stream.uniform(2.0, 60.0);
    const double u = stream.uniform(1.0, w - 2.0);
    const double v = stream.uniform(1.0, h - 2.0);
    cloud.points.push_back({(u - calib.cx) * z / calib.fx,
                            (v - calib.cy) * z / calib.fy, z,
                            stream.uniform(0.2, 0.9)});
  }
  return cloud;
}

// Writes a miniature KITTI-DC-style input tree for pipeline tests.
inline void make_input_tree(const std::filesystem::path& root,
                            int num_frames, int w, int h,
                            std::uint64_t seed = 99) {
  namespace fs = std::filesystem;
  fs::create_directories(root / "image");
  fs::create_directories(root / "lidar");
  fs::create_directories(root / "gt_depth");
  const aurora::CameraCalibration calib = make_calibration(w, h);
  aurora::codecs::write_calibration((root / "calib.txt").string(), calib);
  for (int f = 0; f < num_frames; ++f) {
    char name[32];
    std::snprintf(name, sizeof(name), "%06d", f);
    aurora::codecs::write_rgb_png((root / "image" / (std::string(name) + ".png")).string(),
                                  make_image(w, h, seed + f));
    const aurora::PointCloud cloud = make_frustum_cloud(400, w, h, seed + 100 + f);
    aurora::codecs::write_point_cloud(
        (root / "lidar" / (std::string(name) + ".bin")).string(), cloud);
    aurora::DepthGrid gt = make_depth(w, h, 2.0, 80.0, 0.7, seed + 200 + f);
    aurora::codecs::write_depth_png(
        (root / "gt_depth" / (std::string(name) + ".png")).string(), gt);
  }
}

// Collects relative path -> digest for every regular file under root.
inline std::vector<std::pair<std::string, std::string>> tree_digests(
    const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      out.emplace_back(fs::relative(entry.path(), root).string(),
                       aurora::codecs::file_digest(entry.path().string()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testutil
