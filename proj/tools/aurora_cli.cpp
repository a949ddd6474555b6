#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aurora/align_distill.hpp"
#include "aurora/codecs.hpp"
#include "aurora/eval_metrics.hpp"
#include "aurora/pipeline.hpp"

namespace fs = std::filesystem;
using namespace aurora;

namespace {

std::vector<std::string> list_pngs(const std::string& dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

int run_gen(const pipeline::GenerationConfig& config) {
  const pipeline::Manifest manifest = pipeline::run_dataset(config);
  std::cout << "generated " << manifest.records.size() << " samples";
  if (manifest.failed_frames > 0) {
    std::cout << " (" << manifest.failed_frames << " failed)";
  }
  std::cout << "\n";
  return manifest.failed_frames > 0 ? 2 : 0;
}

int run_eval(const std::string& pred_dir, const std::string& gt_dir,
             const std::string& out_path) {
  const std::vector<std::string> names = list_pngs(gt_dir);
  if (names.empty()) throw LayoutError("no ground-truth PNGs in " + gt_dir);

  // Aggregate over all matched frames as one pixel population.
  double sum_abs = 0, sum_sq = 0, sum_iabs = 0, sum_isq = 0;
  std::size_t n = 0, invalid_pred = 0, failed = 0;
  for (const std::string& name : names) {
    const fs::path pred_path = fs::path(pred_dir) / name;
    if (!fs::is_regular_file(pred_path)) {
      std::cerr << "missing prediction for " << name << "\n";
      ++failed;
      continue;
    }
    try {
      const DepthGrid gt =
          codecs::read_depth_png((fs::path(gt_dir) / name).string());
      const DepthGrid pred = codecs::read_depth_png(pred_path.string());
      const metrics::MetricReport r = metrics::compute_metrics(pred, gt);
      const double k = static_cast<double>(r.valid_pixels);
      sum_abs += r.mae_mm * k;
      sum_sq += r.rmse_mm * r.rmse_mm * k;
      sum_iabs += r.imae_per_km * k;
      sum_isq += r.irmse_per_km * r.irmse_per_km * k;
      n += r.valid_pixels;
      invalid_pred += r.invalid_pred_pixels;
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
      ++failed;
    }
  }
  if (n == 0) throw EmptyGroundTruth("no valid pixels across the evaluation set");

  metrics::MetricReport report;
  report.mae_mm = sum_abs / n;
  report.rmse_mm = std::sqrt(sum_sq / n);
  report.imae_per_km = sum_iabs / n;
  report.irmse_per_km = std::sqrt(sum_isq / n);
  report.valid_pixels = n;
  report.invalid_pred_pixels = invalid_pred;

  const std::string json = metrics::metric_report_to_json(report);
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << json;
    std::cout << "wrote " << out_path << "\n";
  }
  return failed > 0 ? 2 : 0;
}

int run_stats(const std::string& cloud_dir, const std::string& out_path) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(cloud_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".bin") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw LayoutError("no .bin clouds in " + cloud_dir);

  PointCloud all;
  std::size_t failed = 0;
  for (const std::string& name : names) {
    try {
      PointCloud c =
          codecs::read_point_cloud((fs::path(cloud_dir) / name).string());
      all.points.insert(all.points.end(), c.points.begin(), c.points.end());
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
      ++failed;
    }
  }
  const metrics::RangeHistogram hist =
      metrics::range_histogram(all, metrics::default_range_edges());
  const std::string json = metrics::range_histogram_to_json(hist);
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << json;
    std::cout << "wrote " << out_path << "\n";
  }
  return failed > 0 ? 2 : 0;
}

int run_align(const std::string& teacher_path, const std::string& teacher_kind,
              const std::string& gt_path, const std::string& student_path,
              int num_levels, double lambda_d, double lambda_g,
              const std::string& out_path) {
  const DepthGrid gt = codecs::read_depth_png(gt_path);
  const DepthGrid teacher_raw = codecs::read_depth_png(teacher_path);
  const DepthGrid student = codecs::read_depth_png(student_path);

  std::vector<bool> mask(gt.values().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = gt.values()[i] > 0.0;

  const DepthGrid teacher =
      teacher_kind == "disparity"
          ? align::teacher_prior_from_disparity(teacher_raw, gt, mask)
          : align::teacher_prior_from_metric(teacher_raw, gt, mask);

  const align::PyramidLevels pyramid =
      align::build_pyramid(student, gt, num_levels);
  const align::LossResult ssi = align::ssi_loss(pyramid, teacher);
  const align::LossResult grad = align::residual_gradient_loss(pyramid, teacher);

  nlohmann::ordered_json j;
  j["teacher_kind"] = teacher_kind;
  j["levels"] = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < ssi.levels.size(); ++l) {
    nlohmann::ordered_json jl;
    jl["level"] = ssi.levels[l].level;
    jl["alpha"] = ssi.levels[l].fit.scale;
    jl["beta"] = ssi.levels[l].fit.shift;
    jl["pixels_used"] = ssi.levels[l].fit.pixels_used;
    jl["ssi_loss"] = ssi.levels[l].loss;
    jl["grad_loss"] = grad.levels[l].loss;
    jl["degenerate"] = ssi.levels[l].degenerate;
    j["levels"].push_back(jl);
  }
  j["ssi_loss"] = ssi.value;
  j["grad_loss"] = grad.value;
  j["weighted_total"] =
      align::total_loss(0.0, ssi.value, grad.value, lambda_d, lambda_g);

  const std::string json = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << json;
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AURORA-style weather corruption toolkit for RGB-LiDAR data"};
  app.require_subcommand(1);

  pipeline::GenerationConfig config;
  std::vector<std::string> weather_names{"fog", "rain", "snow"};
  std::vector<std::string> time_names{"day"};
  std::vector<std::string> lens_names{"none"};
  std::string frames_arg = "all";

  CLI::App* gen = app.add_subcommand("gen", "generate a corrupted dataset");
  gen->add_option("--input", config.input_root, "input dataset root")
      ->required();
  gen->add_option("--output", config.output_root, "output dataset root")
      ->required();
  gen->add_option("--weather", weather_names,
                  "weather types (clear fog rain snow)");
  gen->add_option("--levels", config.levels, "severity levels (subset of 1 2 3)");
  gen->add_option("--time", time_names, "times of day (day night)");
  gen->add_option("--lens", lens_names, "lens conditions (none raindrop snowflake)");
  gen->add_option("--seed", config.global_seed, "global seed");
  gen->add_option("--jobs", config.jobs, "worker count");
  gen->add_option("--frames", frames_arg,
                  "all | fraction 0..1 | comma-separated frame ids");
  gen->add_flag("--paired-clean", config.emit_paired_clean,
                "emit clean reference records");
  gen->add_option("--masks", config.mask_dir, "occluder mask library directory");
  gen->add_option("--night-images", config.night_image_dir,
                  "pre-translated night image directory");

  std::string pred_dir, gt_dir, out_path;
  CLI::App* eval = app.add_subcommand("eval", "depth completion metrics");
  eval->add_option("--pred-dir", pred_dir, "predicted depth PNG directory")
      ->required();
  eval->add_option("--gt-dir", gt_dir, "ground-truth depth PNG directory")
      ->required();
  eval->add_option("--out", out_path, "output JSON path (default stdout)");

  std::string cloud_dir;
  CLI::App* stats = app.add_subcommand("stats", "point-cloud range statistics");
  stats->add_option("--cloud-dir", cloud_dir, "point-cloud .bin directory")
      ->required();
  stats->add_option("--out", out_path, "output JSON path (default stdout)");

  std::string teacher_path, teacher_kind = "disparity", align_gt, student_path;
  int num_levels = 4;
  double lambda_d = 1.0, lambda_g = 0.5;
  CLI::App* align_cmd =
      app.add_subcommand("align", "teacher normalization and distillation losses");
  align_cmd->add_option("--teacher", teacher_path, "teacher prediction PNG")
      ->required();
  align_cmd
      ->add_option("--teacher-kind", teacher_kind,
                   "teacher output semantics: disparity | metric")
      ->check(CLI::IsMember({"disparity", "metric"}));
  align_cmd->add_option("--gt", align_gt, "clean ground-truth depth PNG")
      ->required();
  align_cmd->add_option("--student", student_path, "student prediction PNG")
      ->required();
  align_cmd->add_option("--levels", num_levels, "pyramid level count");
  align_cmd->add_option("--lambda-d", lambda_d, "SSI loss weight");
  align_cmd->add_option("--lambda-g", lambda_g, "gradient loss weight");
  align_cmd->add_option("--out", out_path, "output JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      config.weathers.clear();
      for (const std::string& w : weather_names) {
        config.weathers.push_back(weather_from_string(w));
      }
      config.times.clear();
      for (const std::string& t : time_names) {
        config.times.push_back(time_of_day_from_string(t));
      }
      config.lenses.clear();
      for (const std::string& l : lens_names) {
        config.lenses.push_back(lens_from_string(l));
      }
      if (frames_arg == "all") {
        config.selection = pipeline::FrameSelection::All;
      } else if (frames_arg.find_first_not_of("0123456789.") ==
                 std::string::npos) {
        config.selection = pipeline::FrameSelection::Fraction;
        config.frame_fraction = std::stod(frames_arg);
      } else {
        config.selection = pipeline::FrameSelection::List;
        std::size_t pos = 0;
        while (pos < frames_arg.size()) {
          const std::size_t comma = frames_arg.find(',', pos);
          const std::size_t end =
              comma == std::string::npos ? frames_arg.size() : comma;
          if (end > pos) {
            config.frame_list.push_back(frames_arg.substr(pos, end - pos));
          }
          pos = end + 1;
        }
      }
      return run_gen(config);
    }
    if (eval->parsed()) return run_eval(pred_dir, gt_dir, out_path);
    if (stats->parsed()) return run_stats(cloud_dir, out_path);
    if (align_cmd->parsed()) {
      return run_align(teacher_path, teacher_kind, align_gt, student_path,
                       num_levels, lambda_d, lambda_g, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
