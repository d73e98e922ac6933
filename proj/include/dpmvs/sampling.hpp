#pragma once

#include <algorithm>
#include <cstddef>

namespace mvs {

// Bilinear sample of a row-major plane for 0 <= x <= width-1,
// 0 <= y <= height-1. The corner index is clamped so the exact far edge
// stays in bounds (the clamped cell then carries weight 1, keeping the
// result exact).
inline float bilinear_sample(const float* plane, int width, int height,
                             double x, double y) {
  const int x0 = std::min(static_cast<int>(x), width - 2);
  const int y0 = std::min(static_cast<int>(y), height - 2);
  const double fx = x - x0;
  const double fy = y - y0;
  const float* p = plane + static_cast<std::size_t>(y0) * width + x0;
  const double top = p[0] + fx * (p[1] - p[0]);
  const double bottom = p[width] + fx * (p[width + 1] - p[width]);
  return static_cast<float>(top + fy * (bottom - top));
}

}  // namespace mvs
