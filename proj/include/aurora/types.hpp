#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "aurora/errors.hpp"

namespace aurora {

// KITTI LiDAR barely reaches past this; also caps inverse-depth blowup.
constexpr double kDefaultMaxDepth = 120.0;
// Clamp for inverse depth so iRMSE stays finite on near-zero predictions.
constexpr double kInverseDepthFloor = 1e-3;  // meters

enum class Frame { Sensor, CameraRectified };

struct LidarPoint {
  double x = 0.0;  // meters
  double y = 0.0;
  double z = 0.0;
  double intensity = 0.0;  // [0,1]

  double range() const { return std::sqrt(x * x + y * y + z * z); }
};

struct PointCloud {
  std::vector<LidarPoint> points;
  Frame frame = Frame::Sensor;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// H x W grid of metric depths. Value 0.0 means invalid / no measurement
// (KITTI-DC sparse depth convention).
class DepthGrid {
 public:
  DepthGrid() = default;
  DepthGrid(int width, int height, double fill = 0.0)
      : width_(width), height_(height),
        values_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }

  double& at(int row, int col) { return values_[idx(row, col)]; }
  double at(int row, int col) const { return values_[idx(row, col)]; }
  bool valid(int row, int col) const { return at(row, col) > 0.0; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  std::size_t valid_count() const {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(),
                      [](double v) { return v > 0.0; }));
  }

  bool same_shape(const DepthGrid& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  std::size_t idx(int row, int col) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

// H x W x 3, all channels in [0,1].
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, std::array<double, 3> fill = {0, 0, 0})
      : width_(width), height_(height),
        values_(static_cast<std::size_t>(width) * height * 3) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = fill[i % 3];
  }

  int width() const { return width_; }
  int height() const { return height_; }

  double& at(int row, int col, int ch) { return values_[idx(row, col, ch)]; }
  double at(int row, int col, int ch) const { return values_[idx(row, col, ch)]; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t idx(int row, int col, int ch) const {
    return (static_cast<std::size_t>(row) * width_ + col) * 3 + ch;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

enum class Weather { Clear, Fog, Rain, Snow };
enum class TimeOfDay { Day, Night };
enum class LensCondition { None, Raindrop, Snowflake };

const char* to_string(Weather w);
const char* to_string(TimeOfDay t);
const char* to_string(LensCondition l);

Weather weather_from_string(const std::string& s);
TimeOfDay time_of_day_from_string(const std::string& s);
LensCondition lens_from_string(const std::string& s);

// The corruption parameter bundle, applied identically to both modalities.
struct WeatherSpec {
  Weather weather = Weather::Clear;
  int severity_level = 0;             // 0 = clean
  double severity_value = 0.0;        // mm/hr for rain/snow, 1/m for fog
  std::string severity_unit;          // "", "mm/hr", "m^-1"
  TimeOfDay time_of_day = TimeOfDay::Day;
  LensCondition lens = LensCondition::None;
  std::uint64_t seed = 0;
};

// Severity table lookup: fog attenuation {0.01, 0.1, 0.2} m^-1,
// rain rate {10, 100, 200} mm/hr, snow rate {0.5, 1.5, 2.5} mm/hr.
// Throws InvalidSeverity for (weather, level) pairs outside the table.
WeatherSpec make_weather_spec(Weather weather, int severity_level,
                              TimeOfDay time_of_day, LensCondition lens,
                              std::uint64_t seed);

double severity_table_value(Weather weather, int severity_level);
const char* severity_unit(Weather weather);

struct CameraCalibration {
  double fx = 0.0, fy = 0.0;  // pixels
  double cx = 0.0, cy = 0.0;  // pixels
  std::array<double, 9> rect{1, 0, 0, 0, 1, 0, 0, 0, 1};       // row-major 3x3
  std::array<double, 12> extrinsic{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};  // 3x4
  int image_width = 0;
  int image_height = 0;
};

struct SampleAnnotation {
  std::string weather;
  int severity_level = 0;
  double severity_value = 0.0;
  std::string unit;
  std::string time_of_day;
  std::string lens;
  std::string scene;
  std::string prompt;
};

// Template-based prompt: a pure function of the other annotation fields.
std::string annotation_prompt(const WeatherSpec& spec, const std::string& scene);
SampleAnnotation make_annotation(const WeatherSpec& spec, const std::string& scene);

// 1000 / max(d, floor), in 1/km.
inline double inverse_depth(double d, double floor = kInverseDepthFloor) {
  return 1000.0 / std::max(d, floor);
}

}  // namespace aurora
