#pragma once

#include <vector>

#include "aurora/types.hpp"

namespace aurora::projection {

struct PixelSample {
  int u = 0;
  int v = 0;
  double depth = 0.0;  // meters, camera-frame z
  std::size_t source_index = 0;
};

// rect * (extrinsic * [x y z 1]) with a behind-camera cutoff (stage-1 FoV
// filter). Points with z_cam <= z_min are removed.
PointCloud to_camera_frame(const PointCloud& cloud,
                           const CameraCalibration& calib,
                           double z_min = 0.1);

// Pinhole projection with round-to-nearest (half away from zero); samples
// outside the image bounds are discarded (stage-2 FoV filter).
std::vector<PixelSample> project_points(const PointCloud& cam_cloud,
                                        const CameraCalibration& calib);

// Nearest-depth z-buffer; equal depths resolved by smaller source_index,
// so the result is invariant under permutation of the sample sequence.
DepthGrid rasterize(const std::vector<PixelSample>& samples, int width,
                    int height);

// Full pipeline: sensor-frame cloud -> sparse depth grid.
DepthGrid project_to_depth(const PointCloud& cloud,
                           const CameraCalibration& calib);

}  // namespace aurora::projection
