#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dpmvs/errors.hpp"

namespace mvs {

// W x H grid of 32-bit depths in millimetres. 0.0 is the missing-value
// sentinel in every buffer of this type.
struct DepthMapBuffer {
  int width = 0;
  int height = 0;
  std::vector<float> values;  // row-major

  DepthMapBuffer() = default;
  DepthMapBuffer(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  bool empty() const { return values.empty(); }
  std::size_t size() const { return values.size(); }

  float at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  float& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }

  bool same_size(const DepthMapBuffer& other) const {
    return width == other.width && height == other.height;
  }

  int valid_count() const {
    int n = 0;
    for (const float v : values) n += (v > 0.0f) ? 1 : 0;
    return n;
  }

  void validate() const {
    for (const float v : values) {
      if (!std::isfinite(v)) throw UserError("depth map: non-finite value");
      if (v < 0.0f) throw UserError("depth map: negative value");
    }
  }
};

}  // namespace mvs
