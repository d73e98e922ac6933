#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mvs {

// Unordered XYZ points in millimetres with optional per-point RGB.
struct PointCloud {
  std::vector<std::array<float, 3>> points;
  std::vector<std::array<std::uint8_t, 3>> colors;  // empty or 1:1 with points

  std::size_t size() const { return points.size(); }
  bool has_colors() const { return !colors.empty(); }
};

}  // namespace mvs
