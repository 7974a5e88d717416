#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "radiant/geometry.hpp"
#include "radiant/image.hpp"
#include "radiant/splat_config.hpp"

namespace radiant {

/// One 2D Gaussian: covariance is R(rotation) * diag(sx^2, sy^2) * R^T, so it
/// is symmetric positive definite by construction. Depth is a frozen sort key
/// (2D stand-in for camera distance); id breaks depth ties stably.
struct Gaussian2D {
  Point2 position;        // pixels
  double scale_x = 1.0;   // > 0
  double scale_y = 1.0;   // > 0
  double rotation = 0.0;  // radians
  double opacity = 0.5;   // strictly inside (0,1)
  double intensity = 0.5; // [0,1], scalar stand-in for color
  double depth = 0.0;
  std::int64_t id = 0;
};

struct SplatModel {
  std::vector<Gaussian2D> gaussians;
  int canvas_width = 0;
  int canvas_height = 0;
};

/// Rectangular crop of the canvas; the 2D analogue of a camera.
struct View {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
};

View full_view(const SplatModel& model);
ImageBuffer crop(const ImageBuffer& img, const View& view);

using Mat3 = std::array<std::array<double, 3>, 3>;

/// J * W * sigma * W^T * J^T for a symmetric sigma. Standalone covariance
/// projection routine; the 2D pipeline uses identity transforms.
Mat3 project_covariance(const Mat3& sigma, const Mat3& view_transform, const Mat3& jacobian);

/// opacity * exp(-1/2 (p-x)^T Sigma^-1 (p-x)); always in [0, opacity].
double opacity_at(const Gaussian2D& g, const Point2& p);

/// Front-to-back alpha blending per pixel over the Gaussians sorted by
/// (depth, id); contributions with blended opacity below 1e-4 are skipped.
/// Output clamped to [0, 1].
ImageBuffer render(const SplatModel& model, const View& view);

/// (1-lambda) * mean|a-b| + lambda * (1 - SSIM(a,b)) / 2.
double loss(const ImageBuffer& rendered, const ImageBuffer& truth, double lambda);

/// 10*log10(1/MSE) for dynamic range 1.0; +infinity when the images match.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

/// Mean SSIM, Gaussian 11x11 window (sigma 1.5), constants for range 1.0.
/// The window shrinks to the image when smaller than 11 pixels.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

/// Metrics restricted to masked pixels (mask is width*height bytes).
/// NaN when the mask selects nothing.
double psnr_masked(const ImageBuffer& a, const ImageBuffer& b,
                   const std::vector<std::uint8_t>& mask);
double ssim_masked(const ImageBuffer& a, const ImageBuffer& b,
                   const std::vector<std::uint8_t>& mask);

/// Pixels within strip_px (Chebyshev) of a cell boundary of the partition,
/// sampled at pixel centers.
std::vector<std::uint8_t> boundary_strip_mask(const WeightedPartition& partition,
                                              int width, int height, int strip_px);

// -- differentiable fitting ------------------------------------------------

/// Optimization-space layout per Gaussian:
/// [x, y, log sx, log sy, rotation, logit opacity, intensity].
inline constexpr int kParamsPerGaussian = 7;

std::vector<double> pack_parameters(const SplatModel& model);
/// Exact inverse of pack_parameters; depth and id are left untouched.
void unpack_parameters(SplatModel& model, const std::vector<double>& params);

struct LossGrad {
  double value = 0.0;
  std::vector<double> grad;  // d(mean view loss) / d(packed params)
};

/// Analytic gradient of the mean loss over (view, truth) pairs with respect
/// to every packed parameter.
LossGrad loss_gradient(const SplatModel& model, const std::vector<View>& views,
                       const std::vector<ImageBuffer>& truths, double lambda);

struct FitOptions {
  int num_gaussians = 32;
  int iterations = 250;
  double lambda = 0.2;
  double step_size = 1.0;
  std::uint64_t seed = 0;
};

/// Gradient descent against the mean loss over the views. Positions seed at
/// intensity-weighted random pixels of the views; depth keys are frozen at
/// creation. Returns the best iterate seen, so the result never scores worse
/// than the initialization. Throws if the loss turns non-finite.
SplatModel fit(const ImageBuffer& truth, const std::vector<View>& views, const FitOptions& opt);

// -- fusion ----------------------------------------------------------------

struct RegionModel {
  SplatModel model;
  std::int64_t site_id = 0;  // owning cell in the partition
};

/// Boundary-cut fusion: keeps only Gaussians sitting inside their own cell,
/// then concatenates.
SplatModel merge_models(const std::vector<RegionModel>& models,
                        const WeightedPartition& partition);

struct DeviceModel {
  SplatModel model;
  std::vector<View> views;  // the views this model was trained on
};

/// Retraining fusion: renders each model's own views as synthetic ground
/// truth, concatenates everything uncut, then runs `epochs` passes of
/// gradient descent over the synthetic views. Real images are never touched.
SplatModel aggregate_models(const std::vector<DeviceModel>& models, int epochs,
                            double lambda, double step_size, std::uint64_t seed);

}  // namespace radiant
