#include "tfg/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfg/segment.hpp"

namespace tfg {

Eigen::ArrayXd short_time_variance(const MotionSignal& signal, int window,
                                   int shift) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (shift < 1) throw std::invalid_argument("shift must be >= 1");
  const int n = signal.size();
  if (n < window)
    throw std::invalid_argument("signal shorter than the variance window");

  const int count = (n - window) / shift + 1;
  Eigen::ArrayXd out(count);
  for (int j = 0; j < count; ++j) {
    const auto seg = signal.values.segment(j * shift, window);
    const double mean = seg.mean();
    out[j] = (seg - mean).square().sum() / window;
  }
  return out;
}

PauseReport detect_pause(const MotionSignal& signal, double threshold,
                         int window, int shift, int min_length) {
  if (signal.kind != SignalKind::tfg)
    throw std::invalid_argument("detect_pause expects a TFG signal");
  if (min_length < 1) throw std::invalid_argument("min_length must be >= 1");
  if (!(signal.fps > 0.0)) throw std::invalid_argument("fps must be > 0");

  const Eigen::ArrayXd variance = short_time_variance(signal, window, shift);

  PauseReport report;
  report.threshold = threshold;
  report.window = window;
  report.shift = shift;
  report.min_length = min_length;
  report.fps = signal.fps;
  report.variance_length = static_cast<int>(variance.size());

  int run_start = -1;
  const int m = static_cast<int>(variance.size());
  for (int j = 0; j <= m; ++j) {
    const bool low = j < m && variance[j] < threshold;
    if (low && run_start < 0) run_start = j;
    if (!low && run_start >= 0) {
      const int len = j - run_start;
      if (len >= min_length) {
        PauseInterval interval;
        interval.start_sample = run_start;
        interval.length_samples = len;
        interval.length_seconds = len / signal.fps;
        interval.classification = interval.length_seconds > kArrestSeconds
                                      ? PauseClass::ventricular_arrest
                                      : PauseClass::missing_beats;
        report.intervals.push_back(interval);
      }
      run_start = -1;
    }
  }
  return report;
}

VarianceMap variance_map(const TfgField& field, const BinaryMask& mask) {
  if (mask.width() != field.width || mask.height() != field.height)
    throw std::invalid_argument("variance_map: mask dimensions differ");

  VarianceMap map;
  map.values = Grid::Zero(field.height, field.width);
  map.mask = mask;
  for (int y = 0; y < field.height; ++y)
    for (int x = 0; x < field.width; ++x) {
      if (!mask.at(x, y)) continue;
      const int col = field.column_of(x, y);
      if (col < 0)
        throw std::invalid_argument(
            "variance_map: masked pixel has no TFG (mask is not a subset)");
      const auto sig = field.signals.col(col).array();
      const double mean = sig.mean();
      map.values(y, x) = (sig - mean).square().sum() / sig.size();
    }
  return map;
}

namespace {

double masked_median(const VarianceMap& map) {
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(map.mask.count()));
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (map.mask.at(x, y)) vals.push_back(map.values(y, x));
  if (vals.empty()) throw std::invalid_argument("variance map has no masked pixels");
  const size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  double med = vals[mid];
  if (vals.size() % 2 == 0) {
    std::nth_element(vals.begin(), vals.begin() + mid - 1, vals.end());
    med = 0.5 * (med + vals[mid - 1]);
  }
  return med;
}

}  // namespace

BinaryMask detect_abnormal_region(const VarianceMap& map, double rel_threshold) {
  if (!(rel_threshold >= 0.0))
    throw std::invalid_argument("rel_threshold must be >= 0");
  const double cut = rel_threshold * masked_median(map);

  BinaryMask abnormal = BinaryMask::zeros(map.height(), map.width());
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      abnormal.bits(y, x) = map.mask.at(x, y) && map.values(y, x) < cut;
  return morphological_open(abnormal, 1);
}

Quadrant quadrant_of(double dx, double dy) {
  const double ax = std::abs(dx);
  const double ay = std::abs(dy);
  if (dx < 0.0 && -dx >= ay) return Quadrant::left;
  if (dy < 0.0 && -dy >= ax) return Quadrant::top;
  if (dx >= ay) return Quadrant::right;
  return Quadrant::bottom;
}

LandmarkSet detect_landmarks(const VarianceMap& map, double suppression_radius) {
  if (map.mask.empty())
    throw std::invalid_argument("variance map has no masked pixels");

  // bounding box of the mask
  int x_min = map.width(), x_max = -1, y_min = map.height(), y_max = -1;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (map.mask.at(x, y)) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
  const double cx = 0.5 * (x_min + x_max);
  const double cy = 0.5 * (y_min + y_max);

  LandmarkSet set;
  std::array<bool, 4> found{};
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) {
      if (!map.mask.at(x, y)) continue;
      const auto q = static_cast<int>(quadrant_of(x - cx, y - cy));
      const double v = map.values(y, x);
      if (!found[q] || v < set.cavities[q].variance) {
        set.cavities[q] = Landmark{x, y, v};
        found[q] = true;
      }
    }
  for (int q = 0; q < 4; ++q)
    if (!found[q])
      throw AnalysisError("a quadrant contains no masked pixels");

  // valve candidates: two strongest maxima with non-maximum suppression
  Landmark first{-1, -1, -std::numeric_limits<double>::infinity()};
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (map.mask.at(x, y) && map.values(y, x) > first.variance)
        first = Landmark{x, y, map.values(y, x)};

  Landmark second{-1, -1, -std::numeric_limits<double>::infinity()};
  const double r2 = suppression_radius * suppression_radius;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) {
      if (!map.mask.at(x, y)) continue;
      const double dx = x - first.x;
      const double dy = y - first.y;
      if (dx * dx + dy * dy < r2) continue;
      if (map.values(y, x) > second.variance)
        second = Landmark{x, y, map.values(y, x)};
    }
  if (second.x < 0)
    throw AnalysisError(
        "no second valve candidate outside the suppression radius");

  set.valves = {first, second};
  return set;
}

}  // namespace tfg
