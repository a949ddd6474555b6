#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "aurora/rng.hpp"
#include "aurora/types.hpp"

namespace aurora::rgb {

struct FogImageParams {
  std::array<double, 3> airlight{0.8, 0.8, 0.8};
  double sky_depth = 1000.0;  // meters, assigned above the depth horizon
};

enum class OccluderKind { Raindrop, Snowflake };

// Soft occluder silhouette; alpha in [0,1].
struct OccluderMask {
  int width = 0;
  int height = 0;
  std::vector<double> alpha;
  OccluderKind kind = OccluderKind::Raindrop;

  double at(int row, int col) const {
    return alpha[static_cast<std::size_t>(row) * width + col];
  }
};

struct LensOcclusionParams {
  std::pair<int, int> count_range{1, 4};
  std::pair<double, double> scale_range{0.03, 0.15};  // fraction of image width
  std::pair<double, double> blur_sigma_range{2.0, 8.0};  // pixels
  std::pair<double, double> opacity_range{0.4, 0.95};
  std::array<double, 3> snow_tint{0.85, 0.88, 0.95};
  double boundary_bias = 0.7;  // snow placement weight toward image borders
};

enum class ParticleKind { RainStreak, Snowflake };

// Make every pixel valid: invalid pixels take the nearest valid value
// (Euclidean pixel distance, ties broken by smaller row then column),
// except pixels above the topmost valid pixel of their column, which take
// sky_depth. Throws EmptyDepth if no pixel is valid.
DepthGrid fill_depth_holes(const DepthGrid& grid, double sky_depth);

// Koschmieder: out = clean * t + A * (1 - t), t = exp(-beta * d).
ImageBuffer synthesize_fog_image(const ImageBuffer& clean, const DepthGrid& depth,
                                 double beta, const FogImageParams& params);

// Parametric in-air particle overlay: rain streaks or falling snowflakes.
// N = round(density_per_megapixel * megapixels) primitives.
ImageBuffer overlay_particles(const ImageBuffer& image, ParticleKind kind,
                              double density_per_megapixel, const rng::Key& key);

// Lens-adherent occluder compositing: scaled soft masks blended over a
// locally defocused copy of the image, sequentially layered.
ImageBuffer composite_lens_occlusion(const ImageBuffer& image,
                                     const std::vector<OccluderMask>& masks,
                                     LensCondition lens,
                                     const LensOcclusionParams& params,
                                     const rng::Key& key);

// Mask library: single-channel 8-bit image files (PNG or PGM); filename
// prefix rd_ = raindrop, sf_ = snowflake. value/255 -> alpha.
std::vector<OccluderMask> load_mask_library(const std::string& directory);

// Procedural fallback masks for runs without a curated library.
std::vector<OccluderMask> builtin_masks();

}  // namespace aurora::rgb
