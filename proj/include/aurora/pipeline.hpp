#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aurora/eval_metrics.hpp"
#include "aurora/lidar_weather.hpp"
#include "aurora/rgb_weather.hpp"
#include "aurora/types.hpp"

namespace aurora::pipeline {

// Everything a corruption run needs besides the per-sample weather spec.
struct PipelineParams {
  lidar::LidarWeatherParams lidar;
  rgb::FogImageParams fog;
  rgb::LensOcclusionParams lens;
  // Table-rate -> particle overlay density (primitives per megapixel per
  // unit rate).
  double rain_density_slope = 1.5;
  double snow_density_slope = 160.0;
  std::vector<rgb::OccluderMask> masks;
};

struct SampleInput {
  ImageBuffer image;
  PointCloud cloud;
  DepthGrid gt;
  CameraCalibration calib;
  std::string frame_id;
  std::string scene;
};

struct SampleOutput {
  ImageBuffer image;
  PointCloud cloud;
  DepthGrid sparse;
  SampleAnnotation annotation;
};

// Applies the weather-matched RGB and LiDAR corruption (same omega for
// both), then projects the corrupted cloud to the sparse depth map.
SampleOutput generate_sample(const SampleInput& input, const WeatherSpec& spec,
                             const PipelineParams& params);

enum class FrameSelection { All, List, Fraction };

struct GenerationConfig {
  std::string input_root;
  std::string output_root;
  std::vector<Weather> weathers{Weather::Fog, Weather::Rain, Weather::Snow};
  std::vector<int> levels{1, 2, 3};
  std::vector<TimeOfDay> times{TimeOfDay::Day};
  std::vector<LensCondition> lenses{LensCondition::None};
  std::uint64_t global_seed = 0;
  FrameSelection selection = FrameSelection::All;
  std::vector<std::string> frame_list;
  double frame_fraction = 1.0;
  bool emit_paired_clean = false;
  int jobs = 1;
  std::string mask_dir;        // empty -> builtin masks when lenses need them
  std::string night_image_dir; // optional pre-translated night images
  PipelineParams params;
};

struct ManifestRecord {
  std::string frame;
  std::string condition;
  SampleAnnotation annotation;
  std::map<std::string, std::string> paths;    // artifact name -> path
  std::map<std::string, std::string> digests;  // artifact name -> fnv1a64
  std::string clean_reference;  // condition key of the paired clean record
};

struct Manifest {
  std::vector<ManifestRecord> records;  // sorted by (frame, condition)
  std::size_t failed_frames = 0;
};

// Walks the input tree, generates the full condition grid, writes all
// artifacts plus manifest.json and stats.json under output_root. Per-frame
// errors are logged and counted; the run continues.
Manifest run_dataset(const GenerationConfig& config);

std::string condition_key(const WeatherSpec& spec);

void write_manifest(const std::string& path, const Manifest& manifest);

}  // namespace aurora::pipeline
