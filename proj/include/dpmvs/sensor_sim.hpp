#pragma once

#include <cstdint>

#include "dpmvs/depth_map.hpp"

namespace mvs {

// Synthesizes low-quality "sensor" depth from ground truth: box-downsample,
// then perturb in disparity space with Gaussian noise plus a fixed +0.5 px
// offset, via a virtual stereo pair with baseline b and focal length f.
struct CorruptionParams {
  double baseline_mm = 100.0;   // b, 10 cm
  double focal_px = 2892.0;     // f at the 1600 px wide full resolution
  double sigma_d = 1.0 / 6.0;   // disparity noise std, px
  int downsample = 4;           // box factor
  std::uint64_t seed = 0;

  void validate() const;
};

// Width by which focal_px is calibrated; inputs at other widths get a
// proportionally scaled focal length so disparity noise stays comparable.
inline constexpr double kCorruptionReferenceWidth = 1600.0;

// Mean of the valid (nonzero) pixels in each factor x factor block;
// blocks with no valid pixel stay missing. Dimensions must divide evenly.
DepthMapBuffer box_downsample(const DepthMapBuffer& depth, int factor);

// Full corruption: downsample, then per-pixel
//   d_corrupted = b*f / (b*f/d_down + N(0, sigma_d^2) + 0.5).
// Missing pixels stay missing; a non-positive noisy disparity marks the
// pixel missing. Deterministic for a fixed seed at any thread count.
DepthMapBuffer corrupt(const DepthMapBuffer& depth,
                       const CorruptionParams& params);

}  // namespace mvs
