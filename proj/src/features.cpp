#include "dpmvs/matcher.hpp"

namespace mvs {

FeatureImage extract_features(const ImageRGB8& image) {
  FeatureImage f;
  f.width = image.width;
  f.height = image.height;
  f.channels = 3;
  f.data.resize(static_cast<std::size_t>(f.width) * f.height * 3);

  const std::vector<float> gray = to_grayscale(image);
  std::copy(gray.begin(), gray.end(), f.data.begin());

  const int w = f.width, h = f.height;
  auto g = [&](int x, int y) { return gray[static_cast<std::size_t>(y) * w + x]; };
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float dx, dy;
      if (w == 1)
        dx = 0.0f;
      else if (x == 0)
        dx = g(1, y) - g(0, y);
      else if (x == w - 1)
        dx = g(w - 1, y) - g(w - 2, y);
      else
        dx = 0.5f * (g(x + 1, y) - g(x - 1, y));
      if (h == 1)
        dy = 0.0f;
      else if (y == 0)
        dy = g(x, 1) - g(x, 0);
      else if (y == h - 1)
        dy = g(x, h - 1) - g(x, h - 2);
      else
        dy = 0.5f * (g(x, y + 1) - g(x, y - 1));
      f.at(1, x, y) = dx;
      f.at(2, x, y) = dy;
    }
  }
  return f;
}

FeatureImage feature_gradients(const FeatureImage& features) {
  FeatureImage g;
  g.width = features.width;
  g.height = features.height;
  g.channels = 2 * features.channels;
  g.data.resize(static_cast<std::size_t>(g.width) * g.height * g.channels);

  const int w = g.width, h = g.height;
  for (int c = 0; c < features.channels; ++c) {
    const float* p = features.plane(c);
    auto v = [&](int x, int y) { return p[static_cast<std::size_t>(y) * w + x]; };
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        float dx, dy;
        if (w == 1)
          dx = 0.0f;
        else if (x == 0)
          dx = v(1, y) - v(0, y);
        else if (x == w - 1)
          dx = v(w - 1, y) - v(w - 2, y);
        else
          dx = 0.5f * (v(x + 1, y) - v(x - 1, y));
        if (h == 1)
          dy = 0.0f;
        else if (y == 0)
          dy = v(x, 1) - v(x, 0);
        else if (y == h - 1)
          dy = v(x, h - 1) - v(x, h - 2);
        else
          dy = 0.5f * (v(x, y + 1) - v(x, y - 1));
        g.at(2 * c, x, y) = dx;
        g.at(2 * c + 1, x, y) = dy;
      }
    }
  }
  return g;
}

}  // namespace mvs
