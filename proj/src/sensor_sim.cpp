#include "dpmvs/sensor_sim.hpp"

#include "dpmvs/random.hpp"

namespace mvs {

void CorruptionParams::validate() const {
  if (!(baseline_mm > 0.0)) throw UserError("corruption: baseline must be > 0");
  if (!(focal_px > 0.0)) throw UserError("corruption: focal must be > 0");
  if (sigma_d < 0.0) throw UserError("corruption: sigma_d must be >= 0");
  if (downsample < 1) throw UserError("corruption: downsample must be >= 1");
}

DepthMapBuffer box_downsample(const DepthMapBuffer& depth, int factor) {
  if (factor < 1) throw UserError("box_downsample: factor must be >= 1");
  if (factor == 1) return depth;
  if (depth.width % factor != 0 || depth.height % factor != 0)
    throw UserError("box_downsample: dimensions not divisible by factor");

  DepthMapBuffer out(depth.width / factor, depth.height / factor);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      double sum = 0.0;
      int valid = 0;
      for (int dy = 0; dy < factor; ++dy) {
        const float* row = &depth.at(x * factor, y * factor + dy);
        for (int dx = 0; dx < factor; ++dx) {
          if (row[dx] > 0.0f) {
            sum += row[dx];
            ++valid;
          }
        }
      }
      out.at(x, y) = valid > 0 ? static_cast<float>(sum / valid) : 0.0f;
    }
  }
  return out;
}

DepthMapBuffer corrupt(const DepthMapBuffer& depth,
                       const CorruptionParams& params) {
  params.validate();
  constexpr double kMinDisparity = 1e-9;

  DepthMapBuffer down = box_downsample(depth, params.downsample);
  // focal_px is stated for the full-resolution width; scale it so the
  // virtual-stereo disparity is resolution independent.
  const double bf = params.baseline_mm * params.focal_px *
                    (depth.width / kCorruptionReferenceWidth);

  DepthMapBuffer out(down.width, down.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < down.height; ++y) {
    for (int x = 0; x < down.width; ++x) {
      const float d = down.at(x, y);
      if (!(d > 0.0f)) continue;
      const std::uint64_t index = static_cast<std::uint64_t>(y) * down.width + x;
      const double noise = params.sigma_d * counter_gaussian(params.seed, index);
      const double disparity = bf / d + noise + 0.5;
      if (disparity <= kMinDisparity) continue;  // physically invalid
      out.at(x, y) = static_cast<float>(bf / disparity);
    }
  }
  return out;
}

}  // namespace mvs
