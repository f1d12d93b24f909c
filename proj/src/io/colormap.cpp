#include "tfg/io/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfg::io {

namespace {

// 16 evenly spaced viridis anchors
constexpr std::uint8_t kViridis[16][3] = {
    {68, 1, 84},    {72, 26, 108},  {71, 47, 125},  {65, 68, 135},
    {57, 86, 140},  {49, 104, 142}, {42, 120, 142}, {35, 136, 142},
    {31, 152, 139}, {34, 168, 132}, {53, 183, 121}, {84, 197, 104},
    {122, 209, 81}, {165, 219, 54}, {210, 226, 27}, {253, 231, 37}};

}  // namespace

void viridis(double t, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b) {
  t = std::min(1.0, std::max(0.0, t));
  const double pos = t * 15.0;
  const int i = std::min(14, static_cast<int>(pos));
  const double f = pos - i;
  r = static_cast<std::uint8_t>(std::lround((1 - f) * kViridis[i][0] + f * kViridis[i + 1][0]));
  g = static_cast<std::uint8_t>(std::lround((1 - f) * kViridis[i][1] + f * kViridis[i + 1][1]));
  b = static_cast<std::uint8_t>(std::lround((1 - f) * kViridis[i][2] + f * kViridis[i + 1][2]));
}

RgbImage pseudo_color(const Grid& values, const BinaryMask& mask) {
  const int h = static_cast<int>(values.rows());
  const int w = static_cast<int>(values.cols());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (mask.at(x, y)) {
        lo = std::min(lo, values(y, x));
        hi = std::max(hi, values(y, x));
      }
  const double range = hi - lo;

  RgbImage img = RgbImage::filled(w, h, 0, 0, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const double t = range > 0.0 ? (values(y, x) - lo) / range : 0.0;
      std::uint8_t r, g, b;
      viridis(t, r, g, b);
      img.set(x, y, r, g, b);
    }
  return img;
}

}  // namespace tfg::io
