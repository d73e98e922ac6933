#include <algorithm>
#include <cmath>

#include "dpmvs/matcher.hpp"
#include "dpmvs/sampling.hpp"

namespace mvs {

void MatcherParams::validate() const {
  if (patch_size < 3 || patch_size % 2 == 0)
    throw UserError("matcher: patch size must be odd and >= 3");
  if (!(temperature > 0.0))
    throw UserError("matcher: temperature must be positive");
}

HypothesisSet HypothesisSet::uniform_global(double min, double step, int count) {
  HypothesisSet h;
  h.count = count;
  h.global_min = static_cast<float>(min);
  h.global_step = static_cast<float>(step);
  h.validate();
  return h;
}

HypothesisSet HypothesisSet::per_pixel_grid(int width, int height, int count) {
  HypothesisSet h;
  h.count = count;
  h.width = width;
  h.height = height;
  h.min_depth.assign(static_cast<std::size_t>(width) * height, 0.0f);
  h.step.assign(static_cast<std::size_t>(width) * height, 0.0f);
  if (count < 2) throw UserError("hypotheses: need at least 2 depths");
  return h;
}

void HypothesisSet::validate() const {
  if (count < 2) throw UserError("hypotheses: need at least 2 depths");
  if (!per_pixel()) {
    if (!(global_min > 0.0f) || !(global_step > 0.0f))
      throw UserError("hypotheses: global grid must be positive and increasing");
    return;
  }
  for (std::size_t i = 0; i < min_depth.size(); ++i) {
    if (min_depth[i] == 0.0f && step[i] == 0.0f) continue;  // no hypotheses
    if (!(min_depth[i] > 0.0f) || !(step[i] > 0.0f))
      throw UserError("hypotheses: per-pixel grid must be positive and increasing");
  }
}

MatchView MatchView::from_view(const ImageRGB8& image, const Camera& camera) {
  MatchView v;
  v.gray = to_grayscale(image);
  v.width = image.width;
  v.height = image.height;
  v.camera = camera;
  return v;
}

CostVolume build_cost_volume(const MatchView& ref,
                             const std::vector<MatchView>& sources,
                             const HypothesisSet& hyps, int patch_size,
                             int stride) {
  if (sources.empty()) throw UserError("cost volume: no source views");
  if (patch_size < 3 || patch_size % 2 == 0)
    throw UserError("cost volume: patch size must be odd and >= 3");
  if (stride < 1) throw UserError("cost volume: stride must be >= 1");

  const int out_w = (ref.width + stride - 1) / stride;
  const int out_h = (ref.height + stride - 1) / stride;
  if (hyps.per_pixel() && (hyps.width != out_w || hyps.height != out_h))
    throw UserError("cost volume: hypothesis grid does not match output size");

  CostVolume volume;
  volume.width = out_w;
  volume.height = out_h;
  volume.count = hyps.count;
  volume.costs.assign(
      static_cast<std::size_t>(out_w) * out_h * hyps.count, 0.0f);
  volume.valid.assign(volume.costs.size(), 0);

  const int radius = patch_size / 2;
  const int n_patch = patch_size * patch_size;
  const std::size_t n_src = sources.size();

  std::vector<CameraPairTransform> transforms;
  transforms.reserve(n_src);
  for (const MatchView& src : sources)
    transforms.push_back(make_pair_transform(ref.camera, src.camera));

#pragma omp parallel
  {
    std::vector<double> patch_u(n_patch), patch_v(n_patch);
    std::vector<float> ref_patch(n_patch);

#pragma omp for schedule(dynamic, 4)
    for (int sy = 0; sy < out_h; ++sy) {
      const int y = sy * stride;
      for (int sx = 0; sx < out_w; ++sx) {
        const int x = sx * stride;
        if (!hyps.pixel_valid(sx, sy)) continue;

        // Reference patch at integer positions, clamped at the borders.
        int k = 0;
        double ref_mean = 0.0;
        for (int dy = -radius; dy <= radius; ++dy) {
          const int py = std::clamp(y + dy, 0, ref.height - 1);
          for (int dx = -radius; dx <= radius; ++dx, ++k) {
            const int px = std::clamp(x + dx, 0, ref.width - 1);
            patch_u[k] = px;
            patch_v[k] = py;
            ref_patch[k] = ref.gray[static_cast<std::size_t>(py) * ref.width + px];
            ref_mean += ref_patch[k];
          }
        }
        ref_mean /= n_patch;
        double ref_var = 0.0;
        for (k = 0; k < n_patch; ++k) {
          const double d = ref_patch[k] - ref_mean;
          ref_var += d * d;
        }

        float* cost_cell =
            &volume.costs[(static_cast<std::size_t>(sy) * out_w + sx) *
                          hyps.count];
        std::uint8_t* valid_cell =
            &volume.valid[(static_cast<std::size_t>(sy) * out_w + sx) *
                          hyps.count];

        for (int i = 0; i < hyps.count; ++i) {
          const double depth = hyps.depth_at(sx, sy, i);
          double cost_sum = 0.0;
          int cost_count = 0;

          for (std::size_t s = 0; s < n_src; ++s) {
            const CameraPairTransform& t = transforms[s];
            const MatchView& src = sources[s];
            double sum_w = 0.0, sum_ww = 0.0, sum_rw = 0.0;
            bool usable = true;
            for (k = 0; k < n_patch; ++k) {
              const auto r = t.map(patch_u[k], patch_v[k], depth);
              if (!r.in_front || !r.in_bounds) {
                usable = false;
                break;
              }
              const float w =
                  bilinear(src.gray.data(), src.width, src.height, r.x, r.y);
              sum_w += w;
              sum_ww += static_cast<double>(w) * w;
              sum_rw += static_cast<double>(ref_patch[k]) * w;
            }
            if (!usable) continue;

            const double mean_w = sum_w / n_patch;
            const double var_w = sum_ww - sum_w * mean_w;
            constexpr double kVarEps = 1e-12;
            double cost;
            if (ref_var <= kVarEps || var_w <= kVarEps) {
              cost = kNeutralCost;  // textureless patch, ZNCC undefined
            } else {
              const double covar = sum_rw - ref_mean * sum_w;
              double zncc = covar / std::sqrt(ref_var * var_w);
              zncc = std::clamp(zncc, -1.0, 1.0);
              cost = 1.0 - zncc;
            }
            cost_sum += cost;
            ++cost_count;
          }

          if (cost_count > 0) {
            cost_cell[i] = static_cast<float>(cost_sum / cost_count);
            valid_cell[i] = 1;
          }
        }
      }
    }
  }
  return volume;
}

std::pair<DepthMapBuffer, DepthMapBuffer> regress_depth(
    const CostVolume& volume, const HypothesisSet& hyps, RegressionMode mode,
    double temperature) {
  if (!(temperature > 0.0))
    throw UserError("regress: temperature must be positive");
  if (volume.count != hyps.count)
    throw UserError("regress: volume and hypotheses disagree on depth count");
  if (hyps.per_pixel() &&
      (hyps.width != volume.width || hyps.height != volume.height))
    throw UserError("regress: volume and hypotheses disagree on size");

  DepthMapBuffer depth(volume.width, volume.height);
  DepthMapBuffer confidence(volume.width, volume.height);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < volume.height; ++y) {
    std::vector<double> prob(volume.count);
    for (int x = 0; x < volume.width; ++x) {
      if (!hyps.pixel_valid(x, y)) continue;

      int best = -1;
      float best_cost = 0.0f;
      for (int i = 0; i < volume.count; ++i) {
        if (!volume.valid_at(x, y, i)) continue;
        const float c = volume.cost_at(x, y, i);
        if (best < 0 || c < best_cost) {  // ties keep the smaller depth
          best = i;
          best_cost = c;
        }
      }
      if (best < 0) continue;  // no valid hypothesis

      // Softmax over valid entries, shifted by the minimum cost.
      double z = 0.0;
      for (int i = 0; i < volume.count; ++i) {
        if (!volume.valid_at(x, y, i)) {
          prob[i] = 0.0;
          continue;
        }
        prob[i] = std::exp(-(volume.cost_at(x, y, i) - best_cost) / temperature);
        z += prob[i];
      }

      double value;
      if (mode == RegressionMode::wta) {
        value = hyps.depth_at(x, y, best);
      } else {
        double expectation = 0.0;
        for (int i = 0; i < volume.count; ++i)
          expectation += prob[i] * hyps.depth_at(x, y, i);
        value = expectation / z;
      }

      double mass = prob[best];
      if (best > 0) mass += prob[best - 1];
      if (best + 1 < volume.count) mass += prob[best + 1];

      depth.at(x, y) = static_cast<float>(value);
      confidence.at(x, y) = static_cast<float>(mass / z);
    }
  }
  return {std::move(depth), std::move(confidence)};
}

}  // namespace mvs
