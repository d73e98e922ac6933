#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dpmvs/depth_map.hpp"
#include "dpmvs/geometry.hpp"
#include "dpmvs/image.hpp"

namespace mvs {

// Hand-crafted per-pixel channels: grayscale intensity in [0, 1] plus
// central-difference gradients (one-sided at the borders). Planar layout.
struct FeatureImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;  // [channel][y][x]

  float at(int channel, int x, int y) const {
    return data[(static_cast<std::size_t>(channel) * height + y) * width + x];
  }
  float& at(int channel, int x, int y) {
    return data[(static_cast<std::size_t>(channel) * height + y) * width + x];
  }
  const float* plane(int channel) const {
    return &data[static_cast<std::size_t>(channel) * height * width];
  }
};

FeatureImage extract_features(const ImageRGB8& image);

// Spatial gradients of every feature channel (for Gauss-Newton): channel c
// of the input yields channels 2c (d/dx) and 2c+1 (d/dy).
FeatureImage feature_gradients(const FeatureImage& features);

// Depth hypotheses, strictly increasing along the hypothesis axis. Both
// variants are uniform grids kept as (min, step) so per-pixel sets stay
// cheap at full resolution; pixels with min == 0 have no hypotheses.
struct HypothesisSet {
  int count = 0;  // D

  // Global mode: one grid for every pixel.
  float global_min = 0.0f;
  float global_step = 0.0f;

  // Per-pixel mode (arrays non-empty): one grid per pixel.
  int width = 0;
  int height = 0;
  std::vector<float> min_depth;
  std::vector<float> step;

  bool per_pixel() const { return !min_depth.empty(); }

  bool pixel_valid(int x, int y) const {
    if (!per_pixel()) return true;
    return min_depth[static_cast<std::size_t>(y) * width + x] > 0.0f;
  }

  float depth_at(int x, int y, int i) const {
    if (!per_pixel()) return global_min + static_cast<float>(i) * global_step;
    const std::size_t p = static_cast<std::size_t>(y) * width + x;
    return min_depth[p] + static_cast<float>(i) * step[p];
  }

  static HypothesisSet uniform_global(double min, double step, int count);
  static HypothesisSet per_pixel_grid(int width, int height, int count);

  void validate() const;
};

// Matching costs for every (pixel, hypothesis): 1 - ZNCC in [0, 2],
// lower is better. Entries with no usable source are invalid.
struct CostVolume {
  int width = 0;
  int height = 0;
  int count = 0;  // hypotheses per pixel
  std::vector<float> costs;    // ((y * width) + x) * count + i
  std::vector<std::uint8_t> valid;

  float cost_at(int x, int y, int i) const {
    return costs[(static_cast<std::size_t>(y) * width + x) * count + i];
  }
  bool valid_at(int x, int y, int i) const {
    return valid[(static_cast<std::size_t>(y) * width + x) * count + i] != 0;
  }
};

// Grayscale view ready for matching.
struct MatchView {
  std::vector<float> gray;  // [0, 1], row-major
  int width = 0;
  int height = 0;
  Camera camera;

  static MatchView from_view(const ImageRGB8& image, const Camera& camera);
};

// Neutral cost assigned when a patch has no variance (ZNCC undefined).
inline constexpr float kNeutralCost = 1.0f;

// Plane-sweep cost volume. For each reference pixel and hypothesis, source
// patches are warped to the reference at a constant ref-camera depth and
// compared with 1 - ZNCC over patch_size x patch_size grayscale windows;
// per-pixel cost is the mean over the sources whose warp lands fully inside
// the source image. With stride > 1 only pixels at (stride*i, stride*j) are
// evaluated and the volume has the strided dimensions.
CostVolume build_cost_volume(const MatchView& ref,
                             const std::vector<MatchView>& sources,
                             const HypothesisSet& hyps, int patch_size,
                             int stride = 1);

enum class RegressionMode { wta, soft };

// Depth regression over the cost volume. wta picks the minimum-cost
// hypothesis (ties toward smaller depth); soft takes the
// softmax(-cost/temperature) expectation over valid hypotheses.
// Confidence is the probability mass of the best hypothesis and its two
// neighbours. Pixels with no valid hypothesis come back missing.
std::pair<DepthMapBuffer, DepthMapBuffer> regress_depth(
    const CostVolume& volume, const HypothesisSet& hyps, RegressionMode mode,
    double temperature);

struct MatcherParams {
  int patch_size = 7;
  RegressionMode regression = RegressionMode::soft;
  double temperature = 0.02;

  void validate() const;
};

}  // namespace mvs
