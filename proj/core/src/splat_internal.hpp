#pragma once

#include <vector>

#include "radiant/image.hpp"
#include "radiant/splat.hpp"

namespace radiant::detail {

inline constexpr double kAlphaSkip = 1e-4;

struct PreparedGaussian {
  std::size_t index = 0;  // into model.gaussians
  double px = 0.0, py = 0.0;
  double inv_xx = 0.0, inv_xy = 0.0, inv_yy = 0.0;  // Sigma^-1
  double alpha = 0.0, intensity = 0.0;
  double cos_r = 1.0, sin_r = 0.0;
  double sx = 1.0, sy = 1.0;
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;  // support box
};

/// Gaussians sorted by (depth, id) and filtered to those whose support box
/// (where the blended opacity can reach kAlphaSkip) intersects the view.
std::vector<PreparedGaussian> prepare(const SplatModel& model, const View& view);

void check_view(const SplatModel& model, const View& view);

/// Accumulates d(loss)/d(packed params) given the per-pixel upstream
/// gradient for this view. grad has kParamsPerGaussian * |gaussians| slots.
void render_backward(const SplatModel& model, const View& view,
                     const ImageBuffer& upstream, std::vector<double>& grad);

struct LossWithImageGrad {
  double value = 0.0;
  ImageBuffer grad;  // d(loss)/d(rendered pixel)
};

LossWithImageGrad loss_with_image_gradient(const ImageBuffer& rendered,
                                           const ImageBuffer& truth, double lambda);

/// SSIM map over the valid (fully windowed) interior; used for masked means.
struct SsimMap {
  int radius = 0;
  ImageBuffer map;  // (W-2R) x (H-2R)
};
SsimMap ssim_map(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace radiant::detail
