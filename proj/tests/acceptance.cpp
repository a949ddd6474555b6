// Acceptance suite: one line per criterion, [PASS]/[FAIL] with elapsed time.
// Exit code 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aurora/align_distill.hpp"
#include "aurora/codecs.hpp"
#include "aurora/eval_metrics.hpp"
#include "aurora/lidar_weather.hpp"
#include "aurora/pipeline.hpp"
#include "aurora/projection.hpp"
#include "aurora/rgb_weather.hpp"
#include "test_util.hpp"

using namespace aurora;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  std::string name;
  double time_limit_s = 0.0;
  std::function<bool(std::string&)> run;
};

bool nearly(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool clouds_equal(const PointCloud& a, const PointCloud& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].x != b.points[i].x || a.points[i].y != b.points[i].y ||
        a.points[i].z != b.points[i].z ||
        a.points[i].intensity != b.points[i].intensity) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 1. Zero-severity identity across all corruptions.
bool criterion_identity(std::string& why) {
  const rng::Key key{3, 14};
  lidar::LidarWeatherParams lp;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PointCloud cloud = testutil::make_cloud(800, 1.0, 80.0, 0.7, s);
    if (!clouds_equal(lidar::corrupt_fog(cloud, 0.0, lp, key), cloud) ||
        !clouds_equal(lidar::corrupt_rain(cloud, 0.0, lp, key), cloud) ||
        !clouds_equal(lidar::corrupt_snow(cloud, 0.0, lp, key), cloud)) {
      why = "lidar corruption at severity 0 changed the cloud";
      return false;
    }
    const ImageBuffer img = testutil::make_image(48, 36, s + 100);
    const DepthGrid depth = testutil::make_depth(48, 36, 1.0, 80.0, 1.0, s + 200);
    if (rgb::synthesize_fog_image(img, depth, 0.0, {}).values() != img.values()) {
      why = "fog synthesis at beta 0 changed the image";
      return false;
    }
    if (rgb::overlay_particles(img, rgb::ParticleKind::RainStreak, 0.0, key)
                .values() != img.values() ||
        rgb::overlay_particles(img, rgb::ParticleKind::Snowflake, 0.0, key)
                .values() != img.values()) {
      why = "particle overlay at density 0 changed the image";
      return false;
    }
    rgb::LensOcclusionParams zero;
    zero.count_range = {0, 0};
    if (rgb::composite_lens_occlusion(img, rgb::builtin_masks(),
                                      LensCondition::Raindrop, zero, key)
            .values() != img.values()) {
      why = "lens compositing at count 0 changed the image";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Koschmieder identity, sky limit, and contrast contraction.
bool criterion_koschmieder(std::string& why) {
  rgb::FogImageParams params;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ImageBuffer img = testutil::make_image(64, 48, s);
    DepthGrid depth = testutil::make_depth(64, 48, 1.0, 100.0, 1.0, s + 40);
    if (rgb::synthesize_fog_image(img, depth, 0.0, params).values() !=
        img.values()) {
      why = "beta 0 is not the identity";
      return false;
    }
    // Sky row at the top of the grid.
    for (int c = 0; c < 64; ++c) depth.at(0, c) = params.sky_depth;
    const ImageBuffer foggy = rgb::synthesize_fog_image(img, depth, 0.2, params);
    for (int c = 0; c < 64; ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        if (!nearly(foggy.at(0, c, ch), params.airlight[ch], 1e-6)) {
          why = "sky pixel does not converge to airlight";
          return false;
        }
      }
    }
    for (int r = 0; r < 48; ++r) {
      for (int c = 0; c < 64; ++c) {
        for (int ch = 0; ch < 3; ++ch) {
          const double a = params.airlight[ch];
          if (std::abs(foggy.at(r, c, ch) - a) >
              std::abs(img.at(r, c, ch) - a) + 1e-12) {
            why = "contrast contraction violated";
            return false;
          }
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. Severity-ladder trend on a 1e5-point cloud uniform in range 1-80 m.
bool criterion_trend(std::string& why) {
  PointCloud cloud;
  cloud.points.reserve(100000);
  rng::Stream gen({2024, 0}, rng::hash_string("trend"), 0);
  for (int i = 0; i < 100000; ++i) {
    const double r = gen.uniform(1.0, 80.0);
    const double az = gen.uniform(0.0, 2.0 * M_PI);
    const double el = gen.uniform(-0.3, 0.1);
    cloud.points.push_back({r * std::cos(el) * std::cos(az),
                            r * std::cos(el) * std::sin(az),
                            r * std::sin(el), 0.8});
  }
  lidar::LidarWeatherParams params;
  const rng::Key key{6, 1};

  const metrics::RangeHistogram clean =
      metrics::range_histogram(cloud, metrics::default_range_edges());
  std::vector<double> means, near;
  for (int level = 1; level <= 3; ++level) {
    const double alpha = severity_table_value(Weather::Fog, level);
    const PointCloud out = lidar::corrupt_fog(cloud, alpha, params, key);
    const metrics::RangeHistogram h =
        metrics::range_histogram(out, metrics::default_range_edges());
    means.push_back(h.mean_range);
    near.push_back(h.fraction_within_20m);
  }
  for (int i = 1; i < 3; ++i) {
    if (!(means[i] < means[i - 1])) {
      why = "mean range not strictly decreasing across fog levels";
      return false;
    }
    if (!(near[i] > near[i - 1])) {
      why = "near-range fraction not strictly increasing across fog levels";
      return false;
    }
  }
  if (!(near[2] >= 1.5 * clean.fraction_within_20m)) {
    std::ostringstream os;
    os << "fog-L3 near fraction " << near[2] << " < 1.5x clean "
       << clean.fraction_within_20m;
    why = os.str();
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. Projection micro-scenes against hand-computed pixels.
bool criterion_projection(std::string& why) {
  CameraCalibration calib;
  calib.fx = calib.fy = 700.0;
  calib.cx = 600.0;
  calib.cy = 180.0;
  calib.image_width = 1216;
  calib.image_height = 352;

  struct Scene {
    LidarPoint point;
    bool visible;
    int u, v;
    double depth;
  };
  // Hand-evaluated pinhole arithmetic: u = round(700 x / z + 600),
  // v = round(700 y / z + 180).
  const std::vector<Scene> scenes{
      {{0.0, 0.0, 10.0, 0.5}, true, 600, 180, 10.0},
      {{1.4, 0.36, 10.0, 0.5}, true, 698, 205, 10.0},
      {{-1.0, 0.5, 20.0, 0.5}, true, 565, 198, 20.0},
      {{2.0, -0.4, 8.0, 0.5}, true, 775, 145, 8.0},
      {{0.004, 0.003, 7.0, 0.5}, true, 600, 180, 7.0},
      {{-8.62, 0.0, 10.0, 0.5}, false, 0, 0, 0.0},   // u = -3
      {{0.0, 3.0, 10.0, 0.5}, false, 0, 0, 0.0},     // v = 390 >= 352
      {{0.0, 0.0, -5.0, 0.5}, false, 0, 0, 0.0},     // behind the camera
      {{0.0, 0.0, 0.05, 0.5}, false, 0, 0, 0.0},     // inside z_min
      {{8.78, 2.4, 10.0, 0.5}, true, 1215, 348, 10.0},  // u = round(1214.6)
  };
  for (const Scene& scene : scenes) {
    PointCloud one;
    one.points.push_back(scene.point);
    const std::vector<projection::PixelSample> samples =
        projection::project_points(projection::to_camera_frame(one, calib),
                                   calib);
    if (scene.visible) {
      if (samples.size() != 1 || samples[0].u != scene.u ||
          samples[0].v != scene.v ||
          !nearly(samples[0].depth, scene.depth, 1e-12)) {
        std::ostringstream os;
        os << "scene (" << scene.point.x << "," << scene.point.y << ","
           << scene.point.z << ") projected wrong";
        why = os.str();
        return false;
      }
    } else if (!samples.empty()) {
      why = "invisible point was not discarded";
      return false;
    }
  }

  // Two-sample z-buffer keeps the minimum depth.
  const DepthGrid zbuf =
      projection::rasterize({{5, 5, 12.0, 0}, {5, 5, 7.5, 1}}, 10, 10);
  if (zbuf.at(5, 5) != 7.5) {
    why = "z-buffer did not keep the minimum depth";
    return false;
  }

  // Permutations never change the grid.
  const CameraCalibration small = testutil::make_calibration(64, 48);
  PointCloud cloud = testutil::make_frustum_cloud(400, 64, 48, 77);
  const DepthGrid base = projection::project_to_depth(cloud, small);
  for (int pass = 0; pass < 5; ++pass) {
    std::rotate(cloud.points.begin(), cloud.points.begin() + 37,
                cloud.points.end());
    std::reverse(cloud.points.begin(), cloud.points.begin() + 100);
    if (projection::project_to_depth(cloud, small).values() != base.values()) {
      why = "projection changed under point permutation";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. Affine fits match a brute-force normal-equation oracle.
bool criterion_affine_oracle(std::string& why) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int w = 2 + static_cast<int>(seed % 15);
    const int h = 2 + static_cast<int>((seed * 13) % 15);
    const DepthGrid pred = testutil::make_depth(w, h, 0.5, 50.0, 1.0, seed);
    const DepthGrid target =
        testutil::make_depth(w, h, 1.0, 80.0, 1.0, seed + 500);
    DepthGrid weights(w, h);
    rng::Stream s({seed, 3}, rng::hash_string("accept.w"), 0);
    for (double& v : weights.values()) {
      v = s.uniform() < 0.25 ? 0.0 : s.uniform(0.1, 3.0);
    }

    // Independent solve of the weighted normal equations by Cramer's rule.
    double sw = 0, swx = 0, swxx = 0, swy = 0, swxy = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < weights.values().size(); ++i) {
      const double wgt = weights.values()[i];
      if (wgt <= 0.0) continue;
      ++used;
      const double x = pred.values()[i];
      const double y = target.values()[i];
      sw += wgt;
      swx += wgt * x;
      swxx += wgt * x * x;
      swy += wgt * y;
      swxy += wgt * x * y;
    }
    const double det = swxx * sw - swx * swx;
    if (used < 2 || det < 1e-9 * swxx * sw) continue;
    const double a = (swxy * sw - swx * swy) / det;
    const double b = (swxx * swy - swx * swxy) / det;

    const align::AffineFit fit = align::fit_affine_weighted(pred, target, weights);
    const double scale_ref = std::max(1.0, std::abs(a));
    const double shift_ref = std::max(1.0, std::abs(b));
    if (!nearly(fit.scale, a, 1e-6 * scale_ref) ||
        !nearly(fit.shift, b, 1e-6 * shift_ref)) {
      why = "weighted fit disagrees with the oracle";
      return false;
    }

    // align_level applies the same fit: check the aligned values too.
    auto [aligned, lfit] = align::align_level(pred, target, weights);
    if (!nearly(lfit.scale, a, 1e-6 * scale_ref)) {
      why = "align_level fit disagrees with the oracle";
      return false;
    }
    for (std::size_t i = 0; i < aligned.values().size(); ++i) {
      const double expect = a * pred.values()[i] + b;
      if (!nearly(aligned.values()[i], expect,
                  1e-6 * std::max(1.0, std::abs(expect)))) {
        why = "aligned teacher values disagree with the oracle";
        return false;
      }
    }

    // Unweighted path with the induced binary mask.
    std::vector<bool> mask(weights.values().size());
    double usw = 0, uswx = 0, uswxx = 0, uswy = 0, uswxy = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      mask[i] = weights.values()[i] > 0.0;
      if (!mask[i]) continue;
      const double x = pred.values()[i];
      const double y = target.values()[i];
      usw += 1;
      uswx += x;
      uswxx += x * x;
      uswy += y;
      uswxy += x * y;
    }
    const double udet = uswxx * usw - uswx * uswx;
    if (udet < 1e-9 * uswxx * usw) continue;
    const double ua = (uswxy * usw - uswx * uswy) / udet;
    const double ub = (uswxx * uswy - uswx * uswxy) / udet;
    const align::AffineFit ufit = align::fit_affine(pred, target, mask);
    if (!nearly(ufit.scale, ua, 1e-6 * std::max(1.0, std::abs(ua))) ||
        !nearly(ufit.shift, ub, 1e-6 * std::max(1.0, std::abs(ub)))) {
      why = "masked fit disagrees with the oracle";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. Teacher priors reconstruct metric depth from affine teachers.
bool criterion_teacher_reconstruction(std::string& why) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DepthGrid gt = testutil::make_depth(20, 15, 2.0, 80.0, 0.8, seed);
    std::vector<bool> mask(gt.values().size());
    std::size_t masked = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      mask[i] = gt.values()[i] > 0.0;
      masked += mask[i];
    }
    if (masked < 3) continue;

    // Disparity teacher: P = 0.7 * (1/D) + 0.05.
    DepthGrid p_disp = gt;
    for (double& v : p_disp.values()) {
      v = v > 0.0 ? 0.7 / v + 0.05 : 0.5;
    }
    const DepthGrid dt =
        align::teacher_prior_from_disparity(p_disp, gt, mask);
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i] && !nearly(dt.values()[i], gt.values()[i], 1e-5)) {
        why = "disparity teacher missed the ground truth";
        return false;
      }
    }

    // Metric teacher: P = (D - 3) / 1.5.
    DepthGrid p_metric = gt;
    for (double& v : p_metric.values()) v = (v - 3.0) / 1.5;
    const DepthGrid mt = align::teacher_prior_from_metric(p_metric, gt, mask);
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i] && !nearly(mt.values()[i], gt.values()[i], 1e-5)) {
        why = "metric teacher missed the ground truth";
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. Scale/shift invariance of the distillation losses.
bool criterion_ssi_invariance(std::string& why) {
  rng::Stream draw({9, 9}, rng::hash_string("accept.ssi"), 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t seed = 900 + trial;
    const DepthGrid student = testutil::make_depth(24, 17, 5.0, 60.0, 1.0, seed);
    const DepthGrid gt = testutil::make_depth(24, 17, 5.0, 60.0, 0.7, seed + 1);
    // Teacher values in [60, 100]: every sampled s, c keeps them positive.
    const DepthGrid teacher =
        testutil::make_depth(24, 17, 60.0, 100.0, 1.0, seed + 2);
    const align::PyramidLevels pyramid = align::build_pyramid(student, gt, 4);
    const double base_ssi = align::ssi_loss(pyramid, teacher).value;
    const double base_grad =
        align::residual_gradient_loss(pyramid, teacher).value;

    const double s = draw.uniform(0.1, 10.0);
    const double c = draw.uniform(-5.0, 5.0);
    DepthGrid t = teacher;
    for (double& v : t.values()) v = s * v + c;
    const double ssi = align::ssi_loss(pyramid, t).value;
    const double grad = align::residual_gradient_loss(pyramid, t).value;
    if (!nearly(ssi, base_ssi, 1e-7 * std::max(1.0, std::abs(base_ssi))) ||
        !nearly(grad, base_grad, 1e-7 * std::max(1.0, std::abs(base_grad)))) {
      std::ostringstream os;
      os << "loss moved under (s, c) = (" << s << ", " << c << ")";
      why = os.str();
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 8. Metric fixtures plus a naive loop oracle.
bool criterion_metrics(std::string& why) {
  DepthGrid gt(2, 1);
  gt.values() = {2.0, 4.0};
  DepthGrid pred(2, 1);
  pred.values() = {3.0, 3.0};
  const metrics::MetricReport fixture = metrics::compute_metrics(pred, gt);
  if (!nearly(fixture.mae_mm, 1000.0, 1e-9) ||
      !nearly(fixture.rmse_mm, 1000.0, 1e-9) ||
      !nearly(fixture.imae_per_km, 125.0, 1e-6) ||
      !nearly(fixture.irmse_per_km, 131.76, 0.01)) {
    why = "hand-computed fixture mismatch";
    return false;
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DepthGrid g = testutil::make_depth(40, 30, 0.5, 100.0, 0.7, seed);
    const DepthGrid p = testutil::make_depth(40, 30, 0.5, 100.0, 0.8, seed + 60);
    if (g.valid_count() == 0) continue;
    const metrics::MetricReport fast = metrics::compute_metrics(p, g);

    double se = 0, ae = 0, ise = 0, iae = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.values().size(); ++i) {
      const double gv = g.values()[i];
      if (gv <= 0.0) continue;
      ++n;
      double pv = p.values()[i];
      if (pv <= 0.0) pv = kInverseDepthFloor;
      se += (pv - gv) * (pv - gv) * 1e6;
      ae += std::abs(pv - gv) * 1e3;
      const double ie = inverse_depth(pv) - inverse_depth(gv);
      ise += ie * ie;
      iae += std::abs(ie);
    }
    const double dn = static_cast<double>(n);
    if (!nearly(fast.rmse_mm, std::sqrt(se / dn),
                1e-9 * std::max(1.0, fast.rmse_mm)) ||
        !nearly(fast.mae_mm, ae / dn, 1e-9 * std::max(1.0, fast.mae_mm)) ||
        !nearly(fast.irmse_per_km, std::sqrt(ise / dn),
                1e-9 * std::max(1.0, fast.irmse_per_km)) ||
        !nearly(fast.imae_per_km, iae / dn,
                1e-9 * std::max(1.0, fast.imae_per_km))) {
      why = "random-grid metrics diverge from the loop oracle";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 9. End-to-end determinism across reruns and worker counts.
bool criterion_pipeline_determinism(std::string& why) {
  const fs::path in_root = fs::temp_directory_path() / "aurora_accept_in";
  const fs::path out_root = fs::temp_directory_path() / "aurora_accept_out";
  fs::remove_all(in_root);
  fs::remove_all(out_root);
  testutil::make_input_tree(in_root, 5, 64, 48);

  pipeline::GenerationConfig config;
  config.input_root = in_root.string();
  config.output_root = (out_root / "gen").string();
  // 4 conditions per frame: clear + fog L1..L3.
  config.weathers = {Weather::Clear, Weather::Fog};
  config.levels = {1, 2, 3};
  config.global_seed = 1234;

  bool ok = true;
  std::vector<std::pair<std::string, std::string>> first;
  for (int pass = 0; pass < 3 && ok; ++pass) {
    config.jobs = pass == 1 ? 8 : 1;
    const pipeline::Manifest manifest = pipeline::run_dataset(config);
    if (manifest.failed_frames != 0 || manifest.records.size() != 20) {
      why = "unexpected record count or per-frame failures";
      ok = false;
      break;
    }
    const auto digests = testutil::tree_digests(config.output_root);
    if (pass == 0) {
      first = digests;
    } else if (digests != first) {
      why = config.jobs == 8 ? "8-worker run differs from 1-worker run"
                             : "rerun differs from the first run";
      ok = false;
    }
    fs::remove_all(config.output_root);
  }
  fs::remove_all(in_root);
  fs::remove_all(out_root);
  return ok;
}

// ---------------------------------------------------------------------------
// 10. Codec round trips.
bool criterion_codecs(std::string& why) {
  const fs::path dir = fs::temp_directory_path() / "aurora_accept_codec";
  fs::remove_all(dir);
  fs::create_directories(dir);
  bool ok = true;

  const DepthGrid depth = testutil::make_depth(64, 48, 0.1, 120.0, 0.8, 7);
  codecs::write_depth_png((dir / "d.png").string(), depth);
  const DepthGrid depth_back = codecs::read_depth_png((dir / "d.png").string());
  for (std::size_t i = 0; ok && i < depth.values().size(); ++i) {
    if (std::abs(depth_back.values()[i] - depth.values()[i]) > 1.0 / 512.0) {
      why = "depth png error exceeds half a count";
      ok = false;
    }
  }

  if (ok) {
    PointCloud cloud = testutil::make_cloud(500, 1.0, 80.0, 0.6, 8);
    for (LidarPoint& p : cloud.points) {
      p.x = static_cast<float>(p.x);
      p.y = static_cast<float>(p.y);
      p.z = static_cast<float>(p.z);
      p.intensity = static_cast<float>(p.intensity);
    }
    codecs::write_point_cloud((dir / "c.bin").string(), cloud);
    if (fs::file_size(dir / "c.bin") != cloud.points.size() * 16) {
      why = "cloud file size is not 16 bytes per point";
      ok = false;
    } else if (!clouds_equal(
                   codecs::read_point_cloud((dir / "c.bin").string()), cloud)) {
      why = "point cloud did not round trip exactly";
      ok = false;
    }
  }

  if (ok) {
    const SampleAnnotation ann = make_annotation(
        make_weather_spec(Weather::Snow, 2, TimeOfDay::Night,
                          LensCondition::Snowflake, 4),
        "road");
    codecs::write_annotation((dir / "a.json").string(), ann);
    codecs::write_annotation((dir / "b.json").string(), ann);
    if (codecs::file_digest((dir / "a.json").string()) !=
        codecs::file_digest((dir / "b.json").string())) {
      why = "annotation json is not byte-deterministic";
      ok = false;
    } else {
      const SampleAnnotation back =
          codecs::read_annotation((dir / "a.json").string());
      if (back.weather != ann.weather || back.prompt != ann.prompt ||
          back.severity_value != ann.severity_value) {
        why = "annotation did not round trip";
        ok = false;
      }
    }
  }

  fs::remove_all(dir);
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"zero-severity identity", 10.0, criterion_identity},
      {"Koschmieder fog checks", 5.0, criterion_koschmieder},
      {"severity-ladder range trend", 30.0, criterion_trend},
      {"projection oracle", 1.0, criterion_projection},
      {"affine-fit oracle equivalence", 10.0, criterion_affine_oracle},
      {"teacher-prior reconstruction", 5.0, criterion_teacher_reconstruction},
      {"scale/shift invariance of distillation losses", 10.0,
       criterion_ssi_invariance},
      {"metric fixtures and loop oracle", 5.0, criterion_metrics},
      {"end-to-end determinism", 60.0, criterion_pipeline_determinism},
      {"codec round trips", 5.0, criterion_codecs},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && elapsed > c.time_limit_s) {
      ok = false;
      why = "runtime limit exceeded";
    }
    const std::string suffix = why.empty() ? "" : "; " + why;
    std::printf("[%s] %2zu. %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), elapsed, suffix.c_str());
    failures += !ok;
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures,
                criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
