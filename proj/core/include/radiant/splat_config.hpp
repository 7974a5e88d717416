#pragma once

namespace radiant {

/// Knobs for the 2D splatting stage, carried by the scenario file so a run is
/// fully reproducible from (scenario, image, seed).
struct SplatConfig {
  int crop_px = 32;              // side of the square crop behind each camera
  int gaussians_per_camera = 2;  // device budget = cameras * this
  int fit_iterations = 250;
  double step_size = 1.0;
  double lambda = 0.2;           // L1 / D-SSIM mix
};

}  // namespace radiant
