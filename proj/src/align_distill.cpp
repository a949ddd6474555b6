#include "aurora/align_distill.hpp"

#include <algorithm>
#include <cmath>

namespace aurora::align {

namespace {

AffineFit weighted_least_squares(const std::vector<double>& pred,
                                 const std::vector<double>& target,
                                 const std::vector<double>& w) {
  double sw = 0.0, swx = 0.0, swy = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (w[i] <= 0.0) continue;
    sw += w[i];
    swx += w[i] * pred[i];
    swy += w[i] * target[i];
    ++used;
  }
  if (used < 2 || sw <= 0.0) {
    throw DegenerateFit("affine fit needs at least 2 masked pixels");
  }
  const double mx = swx / sw;
  const double my = swy / sw;
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (w[i] <= 0.0) continue;
    const double dx = pred[i] - mx;
    cov += w[i] * dx * (target[i] - my);
    var += w[i] * dx * dx;
  }
  cov /= sw;
  var /= sw;
  if (var < kFitVarianceFloor) {
    throw DegenerateFit("affine fit is degenerate: prediction has no variance");
  }
  AffineFit fit;
  fit.scale = cov / var;
  fit.shift = my - fit.scale * mx;
  fit.pixels_used = used;
  return fit;
}

// Effective weights for a level: caller weights intersected with teacher
// validity.
std::vector<double> effective_weights(const DepthGrid& weights,
                                      const DepthGrid& teacher_level) {
  std::vector<double> w(weights.values());
  const auto& t = teacher_level.values();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (t[i] <= 0.0) w[i] = 0.0;
  }
  return w;
}

}  // namespace

AffineFit fit_affine(const DepthGrid& pred, const DepthGrid& target,
                     const std::vector<bool>& mask) {
  if (!pred.same_shape(target) || mask.size() != pred.values().size()) {
    throw DimensionMismatch("fit_affine: shapes differ");
  }
  std::vector<double> w(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) w[i] = mask[i] ? 1.0 : 0.0;
  return weighted_least_squares(pred.values(), target.values(), w);
}

AffineFit fit_affine_weighted(const DepthGrid& pred, const DepthGrid& target,
                              const DepthGrid& weights) {
  if (!pred.same_shape(target) || !pred.same_shape(weights)) {
    throw DimensionMismatch("fit_affine_weighted: shapes differ");
  }
  return weighted_least_squares(pred.values(), target.values(),
                                weights.values());
}

DepthGrid teacher_prior_from_disparity(const DepthGrid& teacher_raw,
                                       const DepthGrid& gt,
                                       const std::vector<bool>& mask,
                                       double d_max) {
  if (!teacher_raw.same_shape(gt)) {
    throw DimensionMismatch("teacher/gt shapes differ");
  }
  // Fit in the inverse-depth domain (1/m), only where gt is valid.
  DepthGrid inv_gt(gt.width(), gt.height());
  std::vector<bool> fit_mask(mask);
  for (std::size_t i = 0; i < gt.values().size(); ++i) {
    const double d = gt.values()[i];
    if (d > 0.0) {
      inv_gt.values()[i] = 1.0 / std::max(d, kInverseDepthFloor);
    } else {
      fit_mask[i] = false;
    }
  }
  const AffineFit fit = fit_affine(teacher_raw, inv_gt, fit_mask);

  DepthGrid prior(gt.width(), gt.height());
  for (std::size_t i = 0; i < prior.values().size(); ++i) {
    const double denom =
        std::max(fit.scale * teacher_raw.values()[i] + fit.shift,
                 kInverseDenomFloor);
    prior.values()[i] = std::min(1.0 / denom, d_max);
  }
  return prior;
}

DepthGrid teacher_prior_from_metric(const DepthGrid& teacher_raw,
                                    const DepthGrid& gt,
                                    const std::vector<bool>& mask,
                                    double d_max) {
  if (!teacher_raw.same_shape(gt)) {
    throw DimensionMismatch("teacher/gt shapes differ");
  }
  std::vector<bool> fit_mask(mask);
  for (std::size_t i = 0; i < gt.values().size(); ++i) {
    if (gt.values()[i] <= 0.0) fit_mask[i] = false;
  }
  const AffineFit fit = fit_affine(teacher_raw, gt, fit_mask);

  DepthGrid prior(gt.width(), gt.height());
  for (std::size_t i = 0; i < prior.values().size(); ++i) {
    const double d = fit.scale * teacher_raw.values()[i] + fit.shift;
    prior.values()[i] = d <= 0.0 ? 0.0 : std::min(d, d_max);
  }
  return prior;
}

DepthGrid downsample_level(const DepthGrid& grid, int level) {
  if (level <= 0) return grid;
  const int block = 1 << level;
  const int out_w = (grid.width() + block - 1) / block;
  const int out_h = (grid.height() + block - 1) / block;
  DepthGrid out(out_w, out_h);
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double sum = 0.0;
      int n = 0;
      const int r_hi = std::min((r + 1) * block, grid.height());
      const int c_hi = std::min((c + 1) * block, grid.width());
      for (int rr = r * block; rr < r_hi; ++rr) {
        for (int cc = c * block; cc < c_hi; ++cc) {
          if (grid.valid(rr, cc)) {
            sum += grid.at(rr, cc);
            ++n;
          }
        }
      }
      out.at(r, c) = n > 0 ? sum / n : 0.0;
    }
  }
  return out;
}

std::pair<DepthGrid, AffineFit> align_level(const DepthGrid& teacher_level,
                                            const DepthGrid& student_level,
                                            const DepthGrid& weights) {
  if (!teacher_level.same_shape(student_level) ||
      !teacher_level.same_shape(weights)) {
    throw DimensionMismatch("align_level: shapes differ");
  }
  const std::vector<double> w = effective_weights(weights, teacher_level);
  const AffineFit fit =
      weighted_least_squares(teacher_level.values(), student_level.values(), w);
  DepthGrid aligned(teacher_level.width(), teacher_level.height());
  for (std::size_t i = 0; i < aligned.values().size(); ++i) {
    aligned.values()[i] =
        fit.scale * teacher_level.values()[i] + fit.shift;
  }
  return {std::move(aligned), fit};
}

LossResult ssi_loss(const PyramidLevels& levels, const DepthGrid& teacher) {
  LossResult result;
  for (std::size_t l = 0; l < levels.levels.size(); ++l) {
    const PyramidLevel& level = levels.levels[l];
    LevelDiagnostics diag;
    diag.level = static_cast<int>(l);
    const DepthGrid teacher_l = downsample_level(teacher, static_cast<int>(l));
    if (!teacher_l.same_shape(level.student)) {
      throw DimensionMismatch("pyramid level shape does not match teacher");
    }
    try {
      auto [aligned, fit] = align_level(teacher_l, level.student, level.weights);
      diag.fit = fit;
      const std::vector<double> w = effective_weights(level.weights, teacher_l);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0) continue;
        num += w[i] *
               std::abs(level.student.values()[i] - aligned.values()[i]);
        den += w[i];
      }
      diag.loss = den > 0.0 ? num / den : 0.0;
      result.value += level.delta * diag.loss;
    } catch (const DegenerateFit&) {
      diag.degenerate = true;  // contributes 0, run continues
    }
    result.levels.push_back(diag);
  }
  return result;
}

LossResult residual_gradient_loss(const PyramidLevels& levels,
                                  const DepthGrid& teacher) {
  LossResult result;
  for (std::size_t l = 0; l < levels.levels.size(); ++l) {
    const PyramidLevel& level = levels.levels[l];
    LevelDiagnostics diag;
    diag.level = static_cast<int>(l);
    const DepthGrid teacher_l = downsample_level(teacher, static_cast<int>(l));
    if (!teacher_l.same_shape(level.student)) {
      throw DimensionMismatch("pyramid level shape does not match teacher");
    }
    try {
      auto [aligned, fit] = align_level(teacher_l, level.student, level.weights);
      diag.fit = fit;
      const std::vector<double> w = effective_weights(level.weights, teacher_l);
      const int width = level.student.width();
      const int height = level.student.height();
      auto residual = [&](int r, int c) {
        const std::size_t i = static_cast<std::size_t>(r) * width + c;
        return level.student.values()[i] - aligned.values()[i];
      };
      auto weighted = [&](int r, int c) {
        return w[static_cast<std::size_t>(r) * width + c] > 0.0;
      };
      double num = 0.0;
      std::size_t pairs = 0;
      for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
          if (!weighted(r, c)) continue;
          if (c + 1 < width && weighted(r, c + 1)) {
            num += std::abs(residual(r, c + 1) - residual(r, c));
            ++pairs;
          }
          if (r + 1 < height && weighted(r + 1, c)) {
            num += std::abs(residual(r + 1, c) - residual(r, c));
            ++pairs;
          }
        }
      }
      diag.loss = pairs > 0 ? num / static_cast<double>(pairs) : 0.0;
      result.value += level.delta * diag.loss;
    } catch (const DegenerateFit&) {
      diag.degenerate = true;
    }
    result.levels.push_back(diag);
  }
  return result;
}

PyramidLevels build_pyramid(const DepthGrid& student, const DepthGrid& gt_mask,
                            int num_levels) {
  PyramidLevels pyramid;
  for (int l = 0; l < num_levels; ++l) {
    PyramidLevel level;
    level.student = downsample_level(student, l);
    level.delta = std::pow(2.0, -l);
    if (gt_mask.width() > 0) {
      const DepthGrid mask_l = downsample_level(gt_mask, l);
      level.weights = DepthGrid(mask_l.width(), mask_l.height());
      for (std::size_t i = 0; i < mask_l.values().size(); ++i) {
        level.weights.values()[i] = mask_l.values()[i] > 0.0 ? 1.0 : 0.0;
      }
    } else {
      level.weights = DepthGrid(level.student.width(), level.student.height(), 1.0);
    }
    pyramid.levels.push_back(std::move(level));
  }
  return pyramid;
}

}  // namespace aurora::align
