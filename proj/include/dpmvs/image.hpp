#pragma once

#include <cstdint>
#include <vector>

#include "dpmvs/errors.hpp"

namespace mvs {

struct ImageRGB8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, interleaved RGB

  ImageRGB8() = default;
  ImageRGB8(int w, int h)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  bool empty() const { return pixels.empty(); }

  const std::uint8_t* at(int x, int y) const {
    return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  std::uint8_t* at(int x, int y) {
    return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
  }
};

// Fixed conversion weights; matching costs depend on these staying put.
inline constexpr double kGrayR = 0.299;
inline constexpr double kGrayG = 0.587;
inline constexpr double kGrayB = 0.114;

// Grayscale plane in [0, 1], row-major.
std::vector<float> to_grayscale(const ImageRGB8& image);

// Box average over factor x factor blocks, rounded to nearest.
// Width and height must be divisible by the factor.
ImageRGB8 box_downscale(const ImageRGB8& image, int factor);

}  // namespace mvs
