#include "tfg/segment.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "tfg/image_ops.hpp"

namespace tfg {

void SegmentParams::validate() const {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (threshold && !(*threshold >= 0.0 && *threshold <= 1.0))
    throw std::invalid_argument("fixed threshold must be in [0, 1]");
  if (closing_radius < 0) throw std::invalid_argument("closing radius must be >= 0");
}

double otsu_threshold(const Grid& img) {
  constexpr int kBins = 256;
  std::array<long long, kBins> hist{};
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      int bin = static_cast<int>(img(y, x) * kBins);
      if (bin < 0) bin = 0;
      if (bin >= kBins) bin = kBins - 1;
      ++hist[bin];
    }
  const double total = static_cast<double>(h) * w;
  double sum_all = 0.0;
  for (int i = 0; i < kBins; ++i) sum_all += i * static_cast<double>(hist[i]);

  double best_var = -1.0;
  int best_k = 0;
  double w0 = 0.0, sum0 = 0.0;
  for (int k = 0; k < kBins - 1; ++k) {
    w0 += static_cast<double>(hist[k]);
    sum0 += k * static_cast<double>(hist[k]);
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = sum0 / w0;
    const double mu1 = (sum_all - sum0) / w1;
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best_var) {
      best_var = between;
      best_k = k;
    }
  }
  return (best_k + 1) / static_cast<double>(kBins);
}

namespace {

std::vector<std::pair<int, int>> disc_offsets(int radius) {
  std::vector<std::pair<int, int>> off;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (dx * dx + dy * dy <= radius * radius) off.emplace_back(dx, dy);
  return off;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  const auto off = disc_offsets(radius);
  const int h = mask.height();
  const int w = mask.width();
  BinaryMask out = BinaryMask::zeros(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (out.at(x, y)) continue;
      bool hit = false;
      for (const auto& [dx, dy] : off) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (mask.at(nx, ny)) {
          hit = true;
          break;
        }
      }
      out.bits(y, x) = hit;
    }
  return out;
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  const auto off = disc_offsets(radius);
  const int h = mask.height();
  const int w = mask.width();
  BinaryMask out = BinaryMask::zeros(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool all = true;
      for (const auto& [dx, dy] : off) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;  // outside = set
        if (!mask.at(nx, ny)) {
          all = false;
          break;
        }
      }
      out.bits(y, x) = all;
    }
  return out;
}

BinaryMask morphological_close(const BinaryMask& mask, int radius) {
  return erode(dilate(mask, radius), radius);
}

BinaryMask morphological_open(const BinaryMask& mask, int radius) {
  return dilate(erode(mask, radius), radius);
}

BinaryMask fill_holes(const BinaryMask& mask) {
  const int h = mask.height();
  const int w = mask.width();
  MaskGrid outside = MaskGrid::Constant(h, w, false);
  std::vector<std::pair<int, int>> stack;
  auto push = [&](int x, int y) {
    if (x < 0 || x >= w || y < 0 || y >= h) return;
    if (outside(y, x) || mask.at(x, y)) return;
    outside(y, x) = true;
    stack.emplace_back(x, y);
  };
  for (int x = 0; x < w; ++x) {
    push(x, 0);
    push(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    push(0, y);
    push(w - 1, y);
  }
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    push(x - 1, y);
    push(x + 1, y);
    push(x, y - 1);
    push(x, y + 1);
  }
  BinaryMask out = mask;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (!mask.at(x, y) && !outside(y, x)) out.bits(y, x) = true;
  return out;
}

BinaryMask largest_component(const BinaryMask& mask) {
  const int h = mask.height();
  const int w = mask.width();
  Eigen::ArrayXXi label = Eigen::ArrayXXi::Constant(h, w, -1);
  int best_label = -1;
  long long best_size = 0;
  int next = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      if (!mask.at(x0, y0) || label(y0, x0) >= 0) continue;
      const int cur = next++;
      long long size = 0;
      label(y0, x0) = cur;
      stack.emplace_back(x0, y0);
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        ++size;
        const std::array<std::pair<int, int>, 4> nb{
            {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}};
        for (const auto& [nx, ny] : nb) {
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          if (!mask.at(nx, ny) || label(ny, nx) >= 0) continue;
          label(ny, nx) = cur;
          stack.emplace_back(nx, ny);
        }
      }
      if (size > best_size) {
        best_size = size;
        best_label = cur;
      }
    }
  BinaryMask out = BinaryMask::zeros(h, w);
  if (best_label < 0) return out;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.bits(y, x) = label(y, x) == best_label;
  return out;
}

BinaryMask segment_myocardium(const Frame& frame, const SegmentParams& params) {
  params.validate();
  if (frame.size() == 0) throw std::invalid_argument("empty frame");
  if (!all_finite(frame)) throw std::invalid_argument("non-finite intensities");

  const Grid smoothed = gaussian_blur(frame, params.sigma);
  const double cut = params.threshold ? *params.threshold : otsu_threshold(smoothed);
  BinaryMask mask(MaskGrid(smoothed >= cut));
  mask = morphological_close(mask, params.closing_radius);
  mask = fill_holes(mask);
  mask = largest_component(mask);
  if (mask.empty())
    throw AnalysisError("segmentation produced an empty mask");
  return mask;
}

std::pair<int, int> pick_myocardial_point(const BinaryMask& mask) {
  if (mask.empty()) throw AnalysisError("cannot pick a point from an empty mask");
  const int h = mask.height();
  const int w = mask.width();
  double cx = 0.0, cy = 0.0;
  long long n = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (mask.at(x, y)) {
        cx += x;
        cy += y;
        ++n;
      }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);

  std::pair<int, int> best{-1, -1};
  double best_d = std::numeric_limits<double>::infinity();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const double d = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      if (d < best_d) {
        best_d = d;
        best = {x, y};
      }
    }
  return best;
}

}  // namespace tfg
