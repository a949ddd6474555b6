#pragma once

#include <map>
#include <string>
#include <vector>

#include "aurora/types.hpp"

namespace aurora::metrics {

struct MetricReport {
  double rmse_mm = 0.0;
  double mae_mm = 0.0;
  double irmse_per_km = 0.0;
  double imae_per_km = 0.0;
  std::size_t valid_pixels = 0;
  // gt-valid pixels where the prediction had no value; scored as the
  // inverse-depth floor equivalent (maximally wrong).
  std::size_t invalid_pred_pixels = 0;
};

struct RangeHistogram {
  std::vector<double> edges;   // strictly increasing, meters
  std::vector<std::size_t> counts;  // edges.size()-1 in-range bins + overflow
  std::size_t total = 0;
  double mean_range = 0.0;     // over all points; 0 when empty
  double fraction_within_20m = 0.0;
};

struct TrendEntry {
  int severity = 0;
  double mean_range = 0.0;
  double fraction_within_20m = 0.0;
};

struct TrendReport {
  std::vector<TrendEntry> entries;  // sorted by severity
  bool monotone_degradation = false;
};

// Evaluation mask is gt validity. Errors in mm; inverse depths in 1/km
// with the prediction clamped at the inverse-depth floor.
MetricReport compute_metrics(const DepthGrid& pred, const DepthGrid& gt);

// Bin by range ||p||; an overflow bin is appended for r >= edges.back().
RangeHistogram range_histogram(const PointCloud& cloud,
                               const std::vector<double>& edges);

// Default Fig-style binning: 0..80 m in 5 m bins plus overflow.
std::vector<double> default_range_edges();

TrendReport compare_weather_trend(
    const std::map<int, RangeHistogram>& by_severity);

std::string metric_report_to_json(const MetricReport& report);
std::string range_histogram_to_json(const RangeHistogram& hist);
std::string trend_report_to_json(const TrendReport& report);

}  // namespace aurora::metrics
