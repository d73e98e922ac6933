#include "dpmvs/image.hpp"

#include <cmath>

namespace mvs {

std::vector<float> to_grayscale(const ImageRGB8& image) {
  std::vector<float> gray(static_cast<std::size_t>(image.width) * image.height);
  const std::uint8_t* p = image.pixels.data();
  for (std::size_t i = 0; i < gray.size(); ++i, p += 3)
    gray[i] = static_cast<float>(
        (kGrayR * p[0] + kGrayG * p[1] + kGrayB * p[2]) / 255.0);
  return gray;
}

ImageRGB8 box_downscale(const ImageRGB8& image, int factor) {
  if (factor < 1) throw UserError("box_downscale: factor must be >= 1");
  if (factor == 1) return image;
  if (image.width % factor != 0 || image.height % factor != 0)
    throw UserError("box_downscale: dimensions not divisible by factor");

  ImageRGB8 out(image.width / factor, image.height / factor);
  const int n = factor * factor;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      int sum[3] = {0, 0, 0};
      for (int dy = 0; dy < factor; ++dy) {
        const std::uint8_t* row = image.at(x * factor, y * factor + dy);
        for (int dx = 0; dx < factor; ++dx) {
          sum[0] += row[3 * dx + 0];
          sum[1] += row[3 * dx + 1];
          sum[2] += row[3 * dx + 2];
        }
      }
      std::uint8_t* o = out.at(x, y);
      for (int c = 0; c < 3; ++c)
        o[c] = static_cast<std::uint8_t>((sum[c] + n / 2) / n);
    }
  }
  return out;
}

}  // namespace mvs
