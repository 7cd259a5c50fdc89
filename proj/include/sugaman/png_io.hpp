#pragma once

#include "sugaman/raster.hpp"

#include <array>
#include <string>

namespace sugaman {

/// 8-bit grayscale load; RGB(A) inputs are converted by integer luminance
/// (299 R + 587 G + 114 B) / 1000. Other formats are rejected.
GrayArray load_png_gray(const std::string& path);

void save_png_gray(const std::string& path, const GrayArray& gray);

/// Foreground written as black ink (0), background white (255).
void save_png_binary(const std::string& path, const BinaryImage& img);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

  RgbImage() = default;
  RgbImage(int w, int h, std::array<std::uint8_t, 3> fill = {255, 255, 255})
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  void set(int x, int y, std::array<std::uint8_t, 3> c) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    pixels[static_cast<size_t>(y) * width + x] = c;
  }
};

void save_png_rgb(const std::string& path, const RgbImage& img);

}  // namespace sugaman
