#include "tfg/image_ops.hpp"

#include <cmath>
#include <vector>

namespace tfg {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

Grid gaussian_blur(const Grid& img, double sigma) {
  if (sigma <= 0.0) return img;
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& w : k) w /= sum;

  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  Grid tmp(h, w), out(h, w);
  // horizontal pass
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += k[i + radius] * img(y, clampi(x + i, 0, w - 1));
      tmp(y, x) = acc;
    }
  }
  // vertical pass
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += k[i + radius] * tmp(clampi(y + i, 0, h - 1), x);
      out(y, x) = acc;
    }
  }
  return out;
}

Grid gradient_x(const Grid& img) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  Grid out(h, w);
  for (int x = 0; x < w; ++x) {
    const int xm = clampi(x - 1, 0, w - 1);
    const int xp = clampi(x + 1, 0, w - 1);
    for (int y = 0; y < h; ++y) out(y, x) = 0.5 * (img(y, xp) - img(y, xm));
  }
  return out;
}

Grid gradient_y(const Grid& img) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  Grid out(h, w);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      const int ym = clampi(y - 1, 0, h - 1);
      const int yp = clampi(y + 1, 0, h - 1);
      out(y, x) = 0.5 * (img(yp, x) - img(ym, x));
    }
  }
  return out;
}

double sample_bilinear(const Grid& img, double x, double y) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  x = std::min(std::max(x, 0.0), static_cast<double>(w - 1));
  y = std::min(std::max(y, 0.0), static_cast<double>(h - 1));
  const int x0 = std::min(static_cast<int>(std::floor(x)), w - 2 >= 0 ? w - 2 : 0);
  const int y0 = std::min(static_cast<int>(std::floor(y)), h - 2 >= 0 ? h - 2 : 0);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  return (1 - fy) * ((1 - fx) * img(y0, x0) + fx * img(y0, x1)) +
         fy * ((1 - fx) * img(y1, x0) + fx * img(y1, x1));
}

Grid resize_bilinear(const Grid& img, int new_height, int new_width) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  if (new_height == h && new_width == w) return img;
  Grid out(new_height, new_width);
  const double sx = static_cast<double>(w) / new_width;
  const double sy = static_cast<double>(h) / new_height;
  for (int x = 0; x < new_width; ++x) {
    const double srcx = (x + 0.5) * sx - 0.5;
    for (int y = 0; y < new_height; ++y) {
      const double srcy = (y + 0.5) * sy - 0.5;
      out(y, x) = sample_bilinear(img, srcx, srcy);
    }
  }
  return out;
}

Grid warp_bilinear(const Grid& img, const Grid& vx, const Grid& vy) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  Grid out(h, w);
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y)
      out(y, x) = sample_bilinear(img, x + vx(y, x), y + vy(y, x));
  return out;
}

bool all_finite(const Grid& img) { return img.isFinite().all(); }

}  // namespace tfg
