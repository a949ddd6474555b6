#pragma once

#include <vector>

#include "aurora/types.hpp"

namespace aurora::align {

struct AffineFit {
  double scale = 1.0;   // a / alpha*
  double shift = 0.0;   // b / beta*
  std::size_t pixels_used = 0;
};

// Per-level weight grid; values >= 0, 0 excludes the pixel.
struct PyramidLevel {
  DepthGrid student;
  DepthGrid weights;
  double delta = 1.0;
};

struct PyramidLevels {
  std::vector<PyramidLevel> levels;
};

struct LevelDiagnostics {
  int level = 0;
  AffineFit fit;
  double loss = 0.0;
  bool degenerate = false;
};

struct LossResult {
  double value = 0.0;
  std::vector<LevelDiagnostics> levels;
};

constexpr double kFitVarianceFloor = 1e-12;
constexpr double kInverseDenomFloor = 1e-4;  // 1/m, caps D^t near 10 km

// Closed-form least squares over masked pixels:
//   a = Cov(pred, target) / Var(pred), b = mean(target) - a * mean(pred).
// Throws DegenerateFit when Var(pred) < 1e-12 or fewer than 2 masked pixels.
AffineFit fit_affine(const DepthGrid& pred, const DepthGrid& target,
                     const std::vector<bool>& mask);

// Weighted variant minimizing sum W * (target - (a * pred + b))^2.
AffineFit fit_affine_weighted(const DepthGrid& pred, const DepthGrid& target,
                              const DepthGrid& weights);

// Disparity-like teacher: fit 1/D_c ~ a P + b on the mask, then
// D^t = 1 / (a P + b) everywhere, denominator clamped to >= 1e-4 1/m and
// the output capped to (0, d_max].
DepthGrid teacher_prior_from_disparity(const DepthGrid& teacher_raw,
                                       const DepthGrid& gt,
                                       const std::vector<bool>& mask,
                                       double d_max = kDefaultMaxDepth);

// Metric teacher: fit D_c ~ a P + b, D^t = a P + b; values driven <= 0
// become invalid, values above d_max are capped.
DepthGrid teacher_prior_from_metric(const DepthGrid& teacher_raw,
                                    const DepthGrid& gt,
                                    const std::vector<bool>& mask,
                                    double d_max = kDefaultMaxDepth);

// Average-pool valid pixels over 2^l x 2^l blocks; a block with no valid
// pixel stays invalid.
DepthGrid downsample_level(const DepthGrid& grid, int level);

// Weighted least-squares alignment of the teacher level onto the student
// level; returns the aligned teacher (alpha* teacher + beta*) and the fit.
// Weights are intersected with teacher validity.
std::pair<DepthGrid, AffineFit> align_level(const DepthGrid& teacher_level,
                                            const DepthGrid& student_level,
                                            const DepthGrid& weights);

// Multi-scale SSI distillation loss: per level, masked mean L1 between the
// student and the aligned teacher, weighted by delta_l. A level with a
// degenerate fit contributes 0 and is flagged in the diagnostics.
LossResult ssi_loss(const PyramidLevels& levels, const DepthGrid& teacher);

// L1 on forward differences of the student-minus-aligned-teacher residual;
// a difference participates only where both pixels carry positive weight.
LossResult residual_gradient_loss(const PyramidLevels& levels,
                                  const DepthGrid& teacher);

inline double total_loss(double l_sup, double l_ssi, double l_grad,
                         double lambda_d, double lambda_g) {
  return l_sup + lambda_d * l_ssi + lambda_g * l_grad;
}

// Defaults for pyramid construction: L = 4, delta_l = 2^-l.
PyramidLevels build_pyramid(const DepthGrid& student, const DepthGrid& gt_mask,
                            int num_levels = 4);

}  // namespace aurora::align
