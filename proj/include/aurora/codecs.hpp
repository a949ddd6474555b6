#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aurora/types.hpp"

namespace aurora::codecs {

// KITTI-DC depth PNG: single-channel 16-bit, stored = round(depth_m * 256),
// 0 = invalid. Values exceeding 65535 are clamped; the writer reports how
// many were.
struct DepthWriteStats {
  std::size_t clamped = 0;
};
DepthWriteStats write_depth_png(const std::string& path, const DepthGrid& grid);
DepthGrid read_depth_png(const std::string& path);

void write_rgb_png(const std::string& path, const ImageBuffer& image);
ImageBuffer read_rgb_png(const std::string& path);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};
// 8-bit single-channel PNG or PGM (P2/P5).
GrayImage read_gray8(const std::string& path);
void write_gray8_png(const std::string& path, const GrayImage& image);

// Flat little-endian float32 quadruples (x, y, z, intensity).
void write_point_cloud(const std::string& path, const PointCloud& cloud);
PointCloud read_point_cloud(const std::string& path);

// Fixed key order for byte determinism.
std::string annotation_to_json(const SampleAnnotation& ann);
SampleAnnotation annotation_from_json(const std::string& json_text);
void write_annotation(const std::string& path, const SampleAnnotation& ann);
SampleAnnotation read_annotation(const std::string& path);

// Plain-text key/value calibration: `P_rect: <12 floats>`,
// `R_rect: <9 floats>`, `Tr_velo_cam: <12 floats>`, row-major.
CameraCalibration read_calibration(const std::string& path, int image_width = 0,
                                   int image_height = 0);
void write_calibration(const std::string& path, const CameraCalibration& calib);

// FNV-1a 64 over the file's bytes, hex-encoded; used for manifest digests.
std::string file_digest(const std::string& path);

}  // namespace aurora::codecs
