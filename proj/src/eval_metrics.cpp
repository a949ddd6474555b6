#include "aurora/eval_metrics.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace aurora::metrics {

namespace {

// Pairwise summation keeps accumulation order-independent enough for the
// stated tolerances.
double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return pairwise_sum(v, 0, v.size()) / static_cast<double>(v.size());
}

}  // namespace

MetricReport compute_metrics(const DepthGrid& pred, const DepthGrid& gt) {
  if (!pred.same_shape(gt)) {
    throw DimensionMismatch("compute_metrics: shapes differ");
  }
  MetricReport report;
  std::vector<double> abs_mm, sq_mm, abs_inv, sq_inv;
  for (std::size_t i = 0; i < gt.values().size(); ++i) {
    const double g = gt.values()[i];
    if (g <= 0.0) continue;
    double p = pred.values()[i];
    if (p <= 0.0) {
      p = kInverseDepthFloor;
      ++report.invalid_pred_pixels;
    }
    const double e_mm = (p - g) * 1000.0;
    abs_mm.push_back(std::abs(e_mm));
    sq_mm.push_back(e_mm * e_mm);
    const double d_inv = inverse_depth(p) - inverse_depth(g);
    abs_inv.push_back(std::abs(d_inv));
    sq_inv.push_back(d_inv * d_inv);
  }
  if (abs_mm.empty()) {
    throw EmptyGroundTruth("compute_metrics: ground truth has no valid pixel");
  }
  report.valid_pixels = abs_mm.size();
  report.mae_mm = mean_of(abs_mm);
  report.rmse_mm = std::sqrt(mean_of(sq_mm));
  report.imae_per_km = mean_of(abs_inv);
  report.irmse_per_km = std::sqrt(mean_of(sq_inv));
  return report;
}

std::vector<double> default_range_edges() {
  std::vector<double> edges;
  for (int m = 0; m <= 80; m += 5) edges.push_back(static_cast<double>(m));
  return edges;
}

RangeHistogram range_histogram(const PointCloud& cloud,
                               const std::vector<double>& edges) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw DimensionMismatch("range_histogram: edges must be strictly increasing");
  }
  RangeHistogram hist;
  hist.edges = edges;
  hist.counts.assign(edges.size(), 0);  // last entry = overflow bin
  double sum = 0.0;
  std::size_t near = 0;
  for (const LidarPoint& p : cloud.points) {
    const double r = p.range();
    ++hist.total;
    sum += r;
    if (r < 20.0) ++near;
    if (r >= edges.back()) {
      ++hist.counts.back();
    } else if (r >= edges.front()) {
      const auto it = std::upper_bound(edges.begin(), edges.end(), r);
      hist.counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1;
    }
  }
  hist.mean_range = hist.total > 0 ? sum / static_cast<double>(hist.total) : 0.0;
  hist.fraction_within_20m =
      hist.total > 0 ? static_cast<double>(near) / hist.total : 0.0;
  return hist;
}

TrendReport compare_weather_trend(
    const std::map<int, RangeHistogram>& by_severity) {
  TrendReport report;
  for (const auto& [severity, hist] : by_severity) {
    report.entries.push_back({severity, hist.mean_range,
                              hist.fraction_within_20m});
  }
  report.monotone_degradation = true;
  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    if (report.entries[i].mean_range > report.entries[i - 1].mean_range) {
      report.monotone_degradation = false;
      break;
    }
  }
  return report;
}

std::string metric_report_to_json(const MetricReport& report) {
  nlohmann::ordered_json j;
  j["rmse_mm"] = report.rmse_mm;
  j["mae_mm"] = report.mae_mm;
  j["irmse_per_km"] = report.irmse_per_km;
  j["imae_per_km"] = report.imae_per_km;
  j["valid_pixels"] = report.valid_pixels;
  j["invalid_pred_pixels"] = report.invalid_pred_pixels;
  return j.dump(2) + "\n";
}

std::string range_histogram_to_json(const RangeHistogram& hist) {
  nlohmann::ordered_json j;
  j["edges_m"] = hist.edges;
  j["counts"] = hist.counts;
  j["total_points"] = hist.total;
  j["mean_range_m"] = hist.mean_range;
  j["fraction_within_20m"] = hist.fraction_within_20m;
  return j.dump(2) + "\n";
}

std::string trend_report_to_json(const TrendReport& report) {
  nlohmann::ordered_json j;
  j["entries"] = nlohmann::ordered_json::array();
  for (const TrendEntry& e : report.entries) {
    nlohmann::ordered_json je;
    je["severity"] = e.severity;
    je["mean_range_m"] = e.mean_range;
    je["fraction_within_20m"] = e.fraction_within_20m;
    j["entries"].push_back(je);
  }
  j["monotone_degradation"] = report.monotone_degradation;
  return j.dump(2) + "\n";
}

}  // namespace aurora::metrics
