#include "aurora/rgb_weather.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>

#include "aurora/codecs.hpp"

namespace aurora::rgb {

namespace {

const std::uint64_t kRainOverlayTag = rng::hash_string("rgb.rain_streak");
const std::uint64_t kSnowOverlayTag = rng::hash_string("rgb.snowflake");
const std::uint64_t kLensTag = rng::hash_string("rgb.lens");

constexpr std::int64_t kFarAway = std::numeric_limits<std::int64_t>::max() / 4;

// 1D squared Euclidean distance transform (lower-envelope method).
void edt_1d(const std::vector<std::int64_t>& f, std::vector<std::int64_t>& d,
            int n) {
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    if (f[q] >= kFarAway) continue;
    double s;
    while (true) {
      const int p = v[k];
      s = (static_cast<double>(f[q] - f[p]) +
           static_cast<double>(q) * q - static_cast<double>(p) * p) /
          (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const std::int64_t dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
    if (f[v[k]] >= kFarAway) d[q] = kFarAway;
  }
}

// Exact squared distance to the nearest valid pixel, for every pixel.
std::vector<std::int64_t> nearest_valid_sqdist(const DepthGrid& grid) {
  const int w = grid.width();
  const int h = grid.height();
  std::vector<std::int64_t> dist(static_cast<std::size_t>(w) * h, kFarAway);

  // Vertical pass: squared distance within each column.
  for (int c = 0; c < w; ++c) {
    std::vector<std::int64_t> f(h), d(h);
    for (int r = 0; r < h; ++r) f[r] = grid.valid(r, c) ? 0 : kFarAway;
    bool any = false;
    for (int r = 0; r < h; ++r) any = any || (f[r] == 0);
    if (any) {
      edt_1d(f, d, h);
    } else {
      d.assign(h, kFarAway);
    }
    for (int r = 0; r < h; ++r) dist[static_cast<std::size_t>(r) * w + c] = d[r];
  }
  // Horizontal pass.
  for (int r = 0; r < h; ++r) {
    std::vector<std::int64_t> f(w), d(w);
    for (int c = 0; c < w; ++c) f[c] = dist[static_cast<std::size_t>(r) * w + c];
    bool any = false;
    for (int c = 0; c < w; ++c) any = any || (f[c] < kFarAway);
    if (any) {
      edt_1d(f, d, w);
    } else {
      d.assign(w, kFarAway);
    }
    for (int c = 0; c < w; ++c) dist[static_cast<std::size_t>(r) * w + c] = d[c];
  }
  return dist;
}

// Among valid pixels at exactly sqdist from (row, col), pick the one with
// the smallest row, then smallest column.
double nearest_valid_value(const DepthGrid& grid, int row, int col,
                           std::int64_t sqdist) {
  const int radius = static_cast<int>(std::ceil(std::sqrt(
      static_cast<double>(sqdist))));
  for (int dy = -radius; dy <= radius; ++dy) {
    const int r = row + dy;
    if (r < 0 || r >= grid.height()) continue;
    const std::int64_t rem = sqdist - static_cast<std::int64_t>(dy) * dy;
    if (rem < 0) continue;
    const int s = static_cast<int>(std::llround(std::sqrt(
        static_cast<double>(rem))));
    if (static_cast<std::int64_t>(s) * s != rem) continue;
    // Smaller column first.
    const int c_lo = col - s;
    const int c_hi = col + s;
    if (c_lo >= 0 && c_lo < grid.width() && grid.valid(r, c_lo)) {
      return grid.at(r, c_lo);
    }
    if (s > 0 && c_hi >= 0 && c_hi < grid.width() && grid.valid(r, c_hi)) {
      return grid.at(r, c_hi);
    }
  }
  throw EmptyDepth("internal: no valid pixel at computed distance");
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[i + radius] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable Gaussian blur of a window, edge-clamped within the window.
void blur_window(std::vector<double>& window, int ww, int wh, double sigma) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  const int radius = (static_cast<int>(kernel.size()) - 1) / 2;
  std::vector<double> tmp(window.size());
  // Horizontal.
  for (int r = 0; r < wh; ++r) {
    for (int c = 0; c < ww; ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int cc = std::clamp(c + i, 0, ww - 1);
          acc += kernel[i + radius] *
                 window[(static_cast<std::size_t>(r) * ww + cc) * 3 + ch];
        }
        tmp[(static_cast<std::size_t>(r) * ww + c) * 3 + ch] = acc;
      }
    }
  }
  // Vertical.
  for (int r = 0; r < wh; ++r) {
    for (int c = 0; c < ww; ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          const int rr = std::clamp(r + i, 0, wh - 1);
          acc += kernel[i + radius] *
                 tmp[(static_cast<std::size_t>(rr) * ww + c) * 3 + ch];
        }
        window[(static_cast<std::size_t>(r) * ww + c) * 3 + ch] = acc;
      }
    }
  }
}

double sample_mask_bilinear(const OccluderMask& mask, double x, double y) {
  x = std::clamp(x, 0.0, static_cast<double>(mask.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(mask.height - 1));
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, mask.width - 1);
  const int y1 = std::min(y0 + 1, mask.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  return mask.at(y0, x0) * (1 - fx) * (1 - fy) + mask.at(y0, x1) * fx * (1 - fy) +
         mask.at(y1, x0) * (1 - fx) * fy + mask.at(y1, x1) * fx * fy;
}

void splat_additive(ImageBuffer& img, double x, double y, double amount) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const double w[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy,
                       fx * fy};
  const int cs[4] = {x0, x0 + 1, x0, x0 + 1};
  const int rs[4] = {y0, y0, y0 + 1, y0 + 1};
  for (int i = 0; i < 4; ++i) {
    if (cs[i] < 0 || cs[i] >= img.width() || rs[i] < 0 || rs[i] >= img.height())
      continue;
    for (int ch = 0; ch < 3; ++ch) {
      double& v = img.at(rs[i], cs[i], ch);
      v = clamp01(v + amount * w[i]);
    }
  }
}

}  // namespace

DepthGrid fill_depth_holes(const DepthGrid& grid, double sky_depth) {
  if (grid.valid_count() == 0) {
    throw EmptyDepth("fill_depth_holes: no valid pixel");
  }
  const int w = grid.width();
  const int h = grid.height();

  // Topmost valid row per column; h means "no valid pixel in column".
  std::vector<int> top_valid(w, h);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) {
      if (grid.valid(r, c)) {
        top_valid[c] = r;
        break;
      }
    }
  }

  const std::vector<std::int64_t> sqdist = nearest_valid_sqdist(grid);

  DepthGrid out = grid;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (grid.valid(r, c)) continue;
      if (top_valid[c] < h && r < top_valid[c]) {
        out.at(r, c) = sky_depth;  // above the depth horizon
      } else {
        out.at(r, c) = nearest_valid_value(
            grid, r, c, sqdist[static_cast<std::size_t>(r) * w + c]);
      }
    }
  }
  return out;
}

ImageBuffer synthesize_fog_image(const ImageBuffer& clean, const DepthGrid& depth,
                                 double beta, const FogImageParams& params) {
  if (clean.width() != depth.width() || clean.height() != depth.height()) {
    throw DimensionMismatch("fog synthesis: image/depth dimensions differ");
  }
  ImageBuffer out = clean;
  for (int r = 0; r < clean.height(); ++r) {
    for (int c = 0; c < clean.width(); ++c) {
      const double d = depth.at(r, c);
      if (d <= 0.0) {
        throw EmptyDepth("fog synthesis requires a fully valid depth grid");
      }
      const double t = std::exp(-beta * d);
      for (int ch = 0; ch < 3; ++ch) {
        out.at(r, c, ch) = clamp01(clean.at(r, c, ch) * t +
                                   params.airlight[ch] * (1.0 - t));
      }
    }
  }
  return out;
}

ImageBuffer overlay_particles(const ImageBuffer& image, ParticleKind kind,
                              double density_per_megapixel, const rng::Key& key) {
  const double megapixels =
      static_cast<double>(image.width()) * image.height() * 1e-6;
  const long n = std::lround(density_per_megapixel * megapixels);
  if (n <= 0) return image;

  const std::uint64_t tag =
      kind == ParticleKind::RainStreak ? kRainOverlayTag : kSnowOverlayTag;
  ImageBuffer out = image;

  for (long i = 0; i < n; ++i) {
    rng::Stream stream(key, tag, static_cast<std::uint64_t>(i));
    const double x0 = stream.uniform(0.0, image.width());
    const double y0 = stream.uniform(0.0, image.height());
    if (kind == ParticleKind::RainStreak) {
      const double length = stream.uniform(8.0, 30.0);
      const double tilt = stream.uniform(-15.0, 15.0) * M_PI / 180.0;
      const double weight = stream.uniform(0.15, 0.4);
      const double dx = std::sin(tilt);
      const double dy = std::cos(tilt);
      for (double t = 0.0; t < length; t += 0.5) {
        splat_additive(out, x0 + dx * t, y0 + dy * t, weight * 0.5);
      }
    } else {
      const double radius = stream.uniform(1.0, 4.0);
      const double alpha = stream.uniform(0.3, 0.8);
      const int r_lo = std::max(0, static_cast<int>(std::floor(y0 - radius - 1)));
      const int r_hi = std::min(image.height() - 1,
                                static_cast<int>(std::ceil(y0 + radius + 1)));
      const int c_lo = std::max(0, static_cast<int>(std::floor(x0 - radius - 1)));
      const int c_hi = std::min(image.width() - 1,
                                static_cast<int>(std::ceil(x0 + radius + 1)));
      for (int r = r_lo; r <= r_hi; ++r) {
        for (int c = c_lo; c <= c_hi; ++c) {
          const double dist = std::hypot(c + 0.5 - x0, r + 0.5 - y0);
          const double f = std::clamp(radius + 0.5 - dist, 0.0, 1.0);
          if (f <= 0.0) continue;
          for (int ch = 0; ch < 3; ++ch) {
            double& v = out.at(r, c, ch);
            v = clamp01(v + alpha * f * (1.0 - v));
          }
        }
      }
    }
  }
  return out;
}

ImageBuffer composite_lens_occlusion(const ImageBuffer& image,
                                     const std::vector<OccluderMask>& masks,
                                     LensCondition lens,
                                     const LensOcclusionParams& params,
                                     const rng::Key& key) {
  if (lens == LensCondition::None) return image;

  const OccluderKind want = lens == LensCondition::Raindrop
                                ? OccluderKind::Raindrop
                                : OccluderKind::Snowflake;
  std::vector<const OccluderMask*> pool;
  for (const auto& m : masks) {
    if (m.kind == want) pool.push_back(&m);
  }
  if (pool.empty()) {
    for (const auto& m : masks) pool.push_back(&m);
  }

  rng::Stream head(key, kLensTag, 0);
  const int count = params.count_range.first +
                    static_cast<int>(head.uniform() *
                                     (params.count_range.second -
                                      params.count_range.first + 1));
  if (count <= 0) return image;
  if (pool.empty()) {
    throw NoMasks("lens occlusion requested but the mask library is empty");
  }

  const bool snow = want == OccluderKind::Snowflake;
  const std::array<double, 3> tint =
      snow ? params.snow_tint : std::array<double, 3>{1.0, 1.0, 1.0};

  ImageBuffer out = image;
  for (int j = 0; j < count; ++j) {
    rng::Stream stream(key, kLensTag, static_cast<std::uint64_t>(j) + 1);
    const OccluderMask& mask =
        *pool[static_cast<std::size_t>(stream.uniform() * pool.size()) %
              pool.size()];
    const double scale = stream.uniform(params.scale_range.first,
                                        params.scale_range.second);
    const int tw = std::max(1, static_cast<int>(std::lround(
                                   scale * image.width())));
    const int th = std::max(
        1, static_cast<int>(std::lround(static_cast<double>(tw) * mask.height /
                                        mask.width)));

    // Placement: snow occluders accumulate near image borders.
    const double u_bias = stream.uniform();
    const double d1 = stream.uniform();
    const double d2 = stream.uniform();
    const double d3 = stream.uniform();
    double cx, cy;
    if (snow && u_bias < params.boundary_bias) {
      const int side = static_cast<int>(d1 * 4.0) % 4;
      const double band = 0.15;
      switch (side) {
        case 0:  // top
          cx = d2 * image.width();
          cy = d3 * band * image.height();
          break;
        case 1:  // bottom
          cx = d2 * image.width();
          cy = (1.0 - d3 * band) * image.height();
          break;
        case 2:  // left
          cx = d3 * band * image.width();
          cy = d2 * image.height();
          break;
        default:  // right
          cx = (1.0 - d3 * band) * image.width();
          cy = d2 * image.height();
          break;
      }
    } else {
      cx = d2 * image.width();
      cy = d3 * image.height();
    }

    const double sigma = stream.uniform(params.blur_sigma_range.first,
                                        params.blur_sigma_range.second);
    const double opacity = stream.uniform(params.opacity_range.first,
                                          params.opacity_range.second);

    const int left = static_cast<int>(std::lround(cx - tw / 2.0));
    const int top = static_cast<int>(std::lround(cy - th / 2.0));
    const int fc_lo = std::max(0, left);
    const int fc_hi = std::min(image.width() - 1, left + tw - 1);
    const int fr_lo = std::max(0, top);
    const int fr_hi = std::min(image.height() - 1, top + th - 1);
    if (fc_lo > fc_hi || fr_lo > fr_hi) continue;  // fully off-screen

    // Defocused background under the occluder: blur a padded window of
    // the current composite.
    const int pad = static_cast<int>(std::ceil(3.0 * sigma));
    const int wc_lo = std::max(0, fc_lo - pad);
    const int wc_hi = std::min(image.width() - 1, fc_hi + pad);
    const int wr_lo = std::max(0, fr_lo - pad);
    const int wr_hi = std::min(image.height() - 1, fr_hi + pad);
    const int ww = wc_hi - wc_lo + 1;
    const int wh = wr_hi - wr_lo + 1;
    std::vector<double> window(static_cast<std::size_t>(ww) * wh * 3);
    for (int r = 0; r < wh; ++r) {
      for (int c = 0; c < ww; ++c) {
        for (int ch = 0; ch < 3; ++ch) {
          window[(static_cast<std::size_t>(r) * ww + c) * 3 + ch] =
              out.at(wr_lo + r, wc_lo + c, ch);
        }
      }
    }
    blur_window(window, ww, wh, sigma);

    for (int r = fr_lo; r <= fr_hi; ++r) {
      for (int c = fc_lo; c <= fc_hi; ++c) {
        const double mx =
            (c - left + 0.5) * static_cast<double>(mask.width) / tw - 0.5;
        const double my =
            (r - top + 0.5) * static_cast<double>(mask.height) / th - 0.5;
        const double m = sample_mask_bilinear(mask, mx, my);
        const double a = opacity * m;
        if (a <= 0.0) continue;
        for (int ch = 0; ch < 3; ++ch) {
          const double b =
              window[(static_cast<std::size_t>(r - wr_lo) * ww + (c - wc_lo)) *
                         3 +
                     ch];
          out.at(r, c, ch) =
              clamp01((1.0 - a) * out.at(r, c, ch) + a * tint[ch] * b);
        }
      }
    }
  }
  return out;
}

std::vector<OccluderMask> load_mask_library(const std::string& directory) {
  namespace fs = std::filesystem;
  std::vector<OccluderMask> masks;
  if (!fs::is_directory(directory)) return masks;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    OccluderKind kind;
    if (name.rfind("rd_", 0) == 0) {
      kind = OccluderKind::Raindrop;
    } else if (name.rfind("sf_", 0) == 0) {
      kind = OccluderKind::Snowflake;
    } else {
      continue;
    }
    const std::string ext = path.extension().string();
    if (ext != ".png" && ext != ".pgm") continue;
    codecs::GrayImage gray = codecs::read_gray8(path.string());
    OccluderMask mask;
    mask.width = gray.width;
    mask.height = gray.height;
    mask.kind = kind;
    mask.alpha.resize(gray.pixels.size());
    for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
      mask.alpha[i] = gray.pixels[i] / 255.0;
    }
    masks.push_back(std::move(mask));
  }
  return masks;
}

std::vector<OccluderMask> builtin_masks() {
  std::vector<OccluderMask> masks;

  // Soft elliptical droplet.
  {
    OccluderMask m;
    m.width = 64;
    m.height = 48;
    m.kind = OccluderKind::Raindrop;
    m.alpha.resize(static_cast<std::size_t>(m.width) * m.height);
    for (int r = 0; r < m.height; ++r) {
      for (int c = 0; c < m.width; ++c) {
        const double nx = (c - m.width / 2.0) / (m.width / 2.0);
        const double ny = (r - m.height / 2.0) / (m.height / 2.0);
        const double d = nx * nx + ny * ny;
        m.alpha[static_cast<std::size_t>(r) * m.width + c] =
            std::clamp(1.5 * (1.0 - d), 0.0, 1.0);
      }
    }
    masks.push_back(std::move(m));
  }

  // Six-armed flake: three soft bars crossing at 60 degrees.
  {
    OccluderMask m;
    m.width = 64;
    m.height = 64;
    m.kind = OccluderKind::Snowflake;
    m.alpha.resize(static_cast<std::size_t>(m.width) * m.height);
    for (int r = 0; r < m.height; ++r) {
      for (int c = 0; c < m.width; ++c) {
        const double x = c - m.width / 2.0;
        const double y = r - m.height / 2.0;
        const double radius = std::hypot(x, y);
        double best = 0.0;
        for (int arm = 0; arm < 3; ++arm) {
          const double theta = arm * M_PI / 3.0;
          const double d =
              std::abs(x * std::sin(theta) - y * std::cos(theta));
          best = std::max(best, std::clamp(4.0 - d, 0.0, 1.0));
        }
        const double falloff = std::clamp(1.2 - radius / 28.0, 0.0, 1.0);
        m.alpha[static_cast<std::size_t>(r) * m.width + c] = best * falloff;
      }
    }
    masks.push_back(std::move(m));
  }
  return masks;
}

}  // namespace aurora::rgb
