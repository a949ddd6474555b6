#include "aurora/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "aurora/codecs.hpp"
#include "aurora/projection.hpp"
#include "aurora/rng.hpp"

namespace fs = std::filesystem;

namespace aurora::pipeline {

namespace {

rng::Key sample_key(const WeatherSpec& spec, const std::string& frame_id) {
  // seed_key = hash(global_seed, frame_id, weather, severity_level);
  // modality separation happens inside the ops via stream tags.
  std::uint64_t frame = rng::hash_string(frame_id);
  frame = rng::combine(frame, static_cast<std::uint64_t>(spec.weather));
  frame = rng::combine(frame, static_cast<std::uint64_t>(spec.severity_level));
  frame = rng::combine(frame, static_cast<std::uint64_t>(spec.lens));
  return {spec.seed, frame};
}

ImageBuffer apply_rgb_weather(const SampleInput& input, const WeatherSpec& spec,
                              const PipelineParams& params,
                              const rng::Key& key) {
  ImageBuffer image = input.image;
  switch (spec.weather) {
    case Weather::Clear:
      break;
    case Weather::Fog: {
      const DepthGrid dense =
          rgb::fill_depth_holes(input.gt, params.fog.sky_depth);
      image = rgb::synthesize_fog_image(image, dense, spec.severity_value,
                                        params.fog);
      break;
    }
    case Weather::Rain:
      image = rgb::overlay_particles(
          image, rgb::ParticleKind::RainStreak,
          params.rain_density_slope * spec.severity_value, key);
      break;
    case Weather::Snow:
      image = rgb::overlay_particles(
          image, rgb::ParticleKind::Snowflake,
          params.snow_density_slope * spec.severity_value, key);
      break;
  }
  if (spec.lens != LensCondition::None) {
    image = rgb::composite_lens_occlusion(image, params.masks, spec.lens,
                                          params.lens, key);
  }
  return image;
}

struct Job {
  std::size_t index = 0;
  std::string frame_id;
  WeatherSpec spec;
  bool clean_reference = false;
};

struct JobResult {
  ManifestRecord record;
  metrics::RangeHistogram histogram;
  bool ok = false;
  std::string error;
};

std::vector<std::string> list_frames(const std::string& image_dir) {
  std::vector<std::string> frames;
  for (const auto& entry : fs::directory_iterator(image_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      frames.push_back(entry.path().stem().string());
    }
  }
  std::sort(frames.begin(), frames.end());
  return frames;
}

}  // namespace

std::string condition_key(const WeatherSpec& spec) {
  std::string key = std::string(to_string(spec.time_of_day)) + "_" +
                    to_string(spec.weather);
  if (spec.severity_level > 0) {
    key += "_l" + std::to_string(spec.severity_level);
  }
  if (spec.lens == LensCondition::Raindrop) key += "_rd";
  if (spec.lens == LensCondition::Snowflake) key += "_sf";
  return key;
}

SampleOutput generate_sample(const SampleInput& input, const WeatherSpec& spec,
                             const PipelineParams& params) {
  const rng::Key key = sample_key(spec, input.frame_id);
  SampleOutput out;
  out.image = apply_rgb_weather(input, spec, params, key);
  out.cloud = lidar::corrupt_cloud(input.cloud, spec, params.lidar, key);
  out.sparse = projection::project_to_depth(out.cloud, input.calib);
  out.annotation = make_annotation(spec, input.scene);
  return out;
}

Manifest run_dataset(const GenerationConfig& config) {
  const fs::path input_root(config.input_root);
  const fs::path output_root(config.output_root);
  if (fs::weakly_canonical(input_root) == fs::weakly_canonical(output_root)) {
    throw LayoutError("output_root must differ from input_root");
  }
  for (const char* sub : {"image", "lidar", "gt_depth"}) {
    if (!fs::is_directory(input_root / sub)) {
      throw LayoutError("missing input subdirectory: " +
                        (input_root / sub).string());
    }
  }
  const fs::path calib_path = input_root / "calib.txt";
  if (!fs::is_regular_file(calib_path)) {
    throw LayoutError("missing calibration file: " + calib_path.string());
  }

  // Frame selection over the sorted frame list.
  std::vector<std::string> frames = list_frames((input_root / "image").string());
  if (config.selection == FrameSelection::List) {
    std::vector<std::string> chosen;
    for (const std::string& f : frames) {
      if (std::find(config.frame_list.begin(), config.frame_list.end(), f) !=
          config.frame_list.end()) {
        chosen.push_back(f);
      }
    }
    frames = std::move(chosen);
  } else if (config.selection == FrameSelection::Fraction) {
    const std::size_t n = static_cast<std::size_t>(
        std::lround(config.frame_fraction * static_cast<double>(frames.size())));
    frames.resize(std::min(frames.size(), n));
  }

  PipelineParams params = config.params;
  const bool needs_masks =
      std::any_of(config.lenses.begin(), config.lenses.end(),
                  [](LensCondition l) { return l != LensCondition::None; });
  if (needs_masks && params.masks.empty()) {
    params.masks = config.mask_dir.empty()
                       ? rgb::builtin_masks()
                       : rgb::load_mask_library(config.mask_dir);
    if (params.masks.empty()) {
      throw LayoutError("lens conditions requested but no masks found in " +
                        config.mask_dir);
    }
  }

  // Condition grid: clean references first, then the corrupted grid.
  std::vector<Job> jobs;
  for (const std::string& frame : frames) {
    if (config.emit_paired_clean) {
      Job job;
      job.frame_id = frame;
      job.spec = make_weather_spec(Weather::Clear, 0, TimeOfDay::Day,
                                   LensCondition::None, config.global_seed);
      job.clean_reference = true;
      jobs.push_back(job);
    }
    for (TimeOfDay time : config.times) {
      for (LensCondition lens : config.lenses) {
        for (Weather weather : config.weathers) {
          if (weather == Weather::Clear) {
            Job job;
            job.frame_id = frame;
            job.spec = make_weather_spec(weather, 0, time, lens,
                                         config.global_seed);
            jobs.push_back(job);
            continue;
          }
          for (int level : config.levels) {
            Job job;
            job.frame_id = frame;
            job.spec = make_weather_spec(weather, level, time, lens,
                                         config.global_seed);
            jobs.push_back(job);
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].index = i;

  fs::create_directories(output_root);

  // Directories are created up front so workers never race on mkdir.
  auto cond_dir = [&](const Job& job) {
    return output_root /
           (job.clean_reference ? "clean" : condition_key(job.spec));
  };
  for (const Job& job : jobs) {
    const fs::path dir = cond_dir(job);
    for (const char* sub :
         {"image", "sparse_depth", "gt_depth", "cloud", "annotation"}) {
      fs::create_directories(dir / sub);
    }
  }

  const CameraCalibration base_calib =
      codecs::read_calibration(calib_path.string());

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      JobResult& result = results[i];
      try {
        SampleInput input;
        input.frame_id = job.frame_id;
        input.scene = "road";
        const fs::path day_image = input_root / "image" / (job.frame_id + ".png");
        fs::path image_path = day_image;
        if (job.spec.time_of_day == TimeOfDay::Night &&
            !config.night_image_dir.empty()) {
          const fs::path night =
              fs::path(config.night_image_dir) / (job.frame_id + ".png");
          if (fs::is_regular_file(night)) image_path = night;
        }
        input.image = codecs::read_rgb_png(image_path.string());
        input.cloud = codecs::read_point_cloud(
            (input_root / "lidar" / (job.frame_id + ".bin")).string());
        input.gt = codecs::read_depth_png(
            (input_root / "gt_depth" / (job.frame_id + ".png")).string());
        input.calib = base_calib;
        input.calib.image_width = input.image.width();
        input.calib.image_height = input.image.height();

        const SampleOutput sample = generate_sample(input, job.spec, params);

        const fs::path dir = cond_dir(job);
        const std::string name = job.frame_id;
        ManifestRecord& rec = result.record;
        rec.frame = job.frame_id;
        rec.condition = job.clean_reference ? "clean" : condition_key(job.spec);
        rec.annotation = sample.annotation;
        if (config.emit_paired_clean && !job.clean_reference) {
          rec.clean_reference = "clean";
        }

        auto emit = [&](const std::string& kind, const fs::path& path) {
          rec.paths[kind] = path.string();
          rec.digests[kind] = codecs::file_digest(path.string());
        };

        fs::path p = dir / "image" / (name + ".png");
        codecs::write_rgb_png(p.string(), sample.image);
        emit("rgb", p);

        p = dir / "sparse_depth" / (name + ".png");
        codecs::write_depth_png(p.string(), sample.sparse);
        emit("sparse_depth", p);

        p = dir / "gt_depth" / (name + ".png");
        codecs::write_depth_png(p.string(), input.gt);
        emit("gt_depth", p);

        p = dir / "cloud" / (name + ".bin");
        codecs::write_point_cloud(p.string(), sample.cloud);
        emit("cloud", p);

        p = dir / "annotation" / (name + ".json");
        codecs::write_annotation(p.string(), sample.annotation);
        emit("annotation", p);

        result.histogram =
            metrics::range_histogram(sample.cloud, metrics::default_range_edges());
        result.ok = true;
      } catch (const std::exception& e) {
        result.ok = false;
        result.error = e.what();
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "frame " << job.frame_id << " ("
                  << condition_key(job.spec) << "): " << e.what() << "\n";
      }
    }
  };

  const int jobs_n = std::max(1, config.jobs);
  std::vector<std::thread> threads;
  threads.reserve(jobs_n);
  for (int t = 0; t < jobs_n; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  // Deterministic assembly: results merged in job order, records sorted.
  Manifest manifest;
  std::map<std::string, std::size_t> condition_counts;
  std::map<std::string, metrics::RangeHistogram> condition_hists;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok) {
      ++manifest.failed_frames;
      continue;
    }
    manifest.records.push_back(results[i].record);
    const std::string& cond = results[i].record.condition;
    ++condition_counts[cond];
    auto [it, inserted] = condition_hists.emplace(cond, results[i].histogram);
    if (!inserted) {
      metrics::RangeHistogram& agg = it->second;
      const metrics::RangeHistogram& h = results[i].histogram;
      const double total = static_cast<double>(agg.total + h.total);
      if (total > 0) {
        agg.mean_range = (agg.mean_range * agg.total +
                          h.mean_range * h.total) / total;
        agg.fraction_within_20m =
            (agg.fraction_within_20m * agg.total +
             h.fraction_within_20m * h.total) / total;
      }
      for (std::size_t b = 0; b < agg.counts.size(); ++b) {
        agg.counts[b] += h.counts[b];
      }
      agg.total += h.total;
    }
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) {
              return std::tie(a.frame, a.condition) <
                     std::tie(b.frame, b.condition);
            });

  write_manifest((output_root / "manifest.json").string(), manifest);

  nlohmann::ordered_json stats;
  stats["condition_counts"] = condition_counts;
  stats["range_statistics"] = nlohmann::ordered_json::object();
  for (const auto& [cond, hist] : condition_hists) {
    nlohmann::ordered_json h;
    h["total_points"] = hist.total;
    h["mean_range_m"] = hist.mean_range;
    h["fraction_within_20m"] = hist.fraction_within_20m;
    h["counts"] = hist.counts;
    stats["range_statistics"][cond] = h;
  }
  stats["failed_frames"] = manifest.failed_frames;
  std::ofstream stats_out(output_root / "stats.json", std::ios::binary);
  stats_out << stats.dump(2) << "\n";

  return manifest;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  nlohmann::ordered_json j;
  j["records"] = nlohmann::ordered_json::array();
  for (const ManifestRecord& rec : manifest.records) {
    nlohmann::ordered_json jr;
    jr["frame"] = rec.frame;
    jr["condition"] = rec.condition;
    jr["weather"] = rec.annotation.weather;
    jr["severity_level"] = rec.annotation.severity_level;
    jr["severity_value"] = rec.annotation.severity_value;
    jr["unit"] = rec.annotation.unit;
    jr["time_of_day"] = rec.annotation.time_of_day;
    jr["lens"] = rec.annotation.lens;
    jr["paths"] = rec.paths;
    jr["digests"] = rec.digests;
    if (!rec.clean_reference.empty()) {
      jr["clean_reference"] = rec.clean_reference;
    }
    j["records"].push_back(jr);
  }
  j["failed_frames"] = manifest.failed_frames;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CodecError("cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace aurora::pipeline
