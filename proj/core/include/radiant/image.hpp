#pragma once

#include <string>
#include <vector>

namespace radiant {

/// Grayscale raster with intensities in [0, 1], row-major.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return pixels.size(); }
};

ImageBuffer make_image(int width, int height, double fill = 0.0);

/// Binary 8-bit PGM (P5); intensities map linearly to [0, 1].
ImageBuffer read_pgm(const std::string& path);
void write_pgm(const ImageBuffer& img, const std::string& path);

}  // namespace radiant
