#include "tfg/motion_signal.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>

#include "tfg/image_ops.hpp"
#include "tfg/parallel.hpp"

namespace tfg {

int quantize_direction(double theta_deg) {
  if (!(theta_deg >= -180.0 && theta_deg < 180.0))
    throw std::invalid_argument("quantize_direction: angle outside [-180, 180)");
  return theta_deg < 0.0 ? -1 : +1;
}

namespace {

void check_flows(const std::vector<FlowField>& flows) {
  if (flows.empty()) throw std::invalid_argument("empty flow series");
  const int w = flows.front().width();
  const int h = flows.front().height();
  for (const auto& f : flows)
    if (f.width() != w || f.height() != h)
      throw std::invalid_argument("flow fields have mixed dimensions");
}

// Signed instantaneous displacement at a real-valued position: polar
// decomposition of the bilinear-sampled flow vector.
double sampled_idg_value(const FlowField& f, double x, double y) {
  const double vx = sample_bilinear(f.vx, x, y);
  const double vy = sample_bilinear(f.vy, x, y);
  const double mag = std::hypot(vx, vy);
  if (mag == 0.0) return 0.0;
  double deg = std::atan2(vy, vx) * (180.0 / M_PI);
  if (deg >= 180.0) deg = -180.0;
  return mag * quantize_direction(deg);
}

}  // namespace

PointTrack make_track(Vec2 start, TrackMode mode,
                      const std::vector<FlowField>& flows) {
  check_flows(flows);
  const int w = flows.front().width();
  const int h = flows.front().height();
  if (!(start.x >= 0.0 && start.x <= w - 1 && start.y >= 0.0 && start.y <= h - 1))
    throw std::invalid_argument("track start outside image bounds");

  PointTrack track;
  track.start = start;
  track.mode = mode;
  track.positions.resize(flows.size() + 1);
  track.positions[0] = start;
  if (mode == TrackMode::fixed) {
    std::fill(track.positions.begin(), track.positions.end(), start);
    return track;
  }
  Vec2 p = start;
  for (size_t n = 0; n < flows.size(); ++n) {
    const double dx = sample_bilinear(flows[n].vx, p.x, p.y);
    const double dy = sample_bilinear(flows[n].vy, p.x, p.y);
    p.x += dx;
    p.y += dy;
    const double cx = std::min(std::max(p.x, 0.0), static_cast<double>(w - 1));
    const double cy = std::min(std::max(p.y, 0.0), static_cast<double>(h - 1));
    if (cx != p.x || cy != p.y) track.clamped = true;
    p = {cx, cy};
    track.positions[n + 1] = p;
  }
  return track;
}

MotionSignal idg(const PointTrack& track, const std::vector<FlowField>& flows,
                 double fps) {
  check_flows(flows);
  if (track.positions.size() != flows.size() + 1)
    throw std::invalid_argument("track length does not match flow series");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be > 0");

  MotionSignal sig;
  sig.kind = SignalKind::idg;
  sig.fps = fps;
  sig.values.resize(static_cast<Eigen::Index>(flows.size()));
  for (size_t n = 0; n < flows.size(); ++n) {
    const Vec2& p = track.positions[n];
    sig.values[static_cast<Eigen::Index>(n)] =
        sampled_idg_value(flows[n], p.x, p.y);
  }
  return sig;
}

MotionSignal to_tfg(const MotionSignal& idg_signal) {
  if (idg_signal.kind != SignalKind::idg)
    throw std::invalid_argument("tfg: input signal is not an IDG");
  MotionSignal out;
  out.kind = SignalKind::tfg;
  out.fps = idg_signal.fps;
  out.values.resize(idg_signal.values.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < idg_signal.values.size(); ++i) {
    acc += idg_signal.values[i];
    out.values[i] = acc;
  }
  return out;
}

int TfgField::column_of(int x, int y) const {
  if (x < 0 || x >= width || y < 0 || y >= height || !mask.at(x, y)) return -1;
  const int linear = y * width + x;
  const auto it = std::lower_bound(pixel_index.begin(), pixel_index.end(), linear);
  if (it == pixel_index.end() || *it != linear) return -1;
  return static_cast<int>(it - pixel_index.begin());
}

MotionSignal TfgField::signal_at(int x, int y) const {
  const int col = column_of(x, y);
  if (col < 0) throw std::invalid_argument("no TFG at unmasked pixel");
  MotionSignal sig;
  sig.kind = SignalKind::tfg;
  sig.fps = fps;
  sig.values = signals.col(col).array();
  return sig;
}

TfgField tfg_field(const ImageSequence& seq, const std::vector<FlowField>& flows,
                   const BinaryMask* mask, TrackMode mode, int threads) {
  validate_sequence(seq);
  check_flows(flows);
  if (static_cast<int>(flows.size()) != seq.frame_count() - 1)
    throw std::invalid_argument("flow series does not match sequence length");
  const int w = seq.width();
  const int h = seq.height();
  if (flows.front().width() != w || flows.front().height() != h)
    throw std::invalid_argument("flow dimensions do not match sequence");
  if (mask && (mask->width() != w || mask->height() != h))
    throw std::invalid_argument("mask dimensions do not match sequence");

  TfgField field;
  field.width = w;
  field.height = h;
  field.fps = seq.fps;
  field.mask = mask ? *mask : BinaryMask(MaskGrid::Constant(h, w, true));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (field.mask.at(x, y)) field.pixel_index.push_back(y * w + x);

  const int t = static_cast<int>(flows.size());
  const int m = static_cast<int>(field.pixel_index.size());
  field.signals.resize(t, m);

  parallel_for(
      m,
      [&](int col) {
        const int x = field.pixel_index[col] % w;
        const int y = field.pixel_index[col] / w;
        double acc = 0.0;
        if (mode == TrackMode::fixed) {
          for (int n = 0; n < t; ++n) {
            const double vx = flows[n].vx(y, x);
            const double vy = flows[n].vy(y, x);
            const double mag = std::hypot(vx, vy);
            double value = 0.0;
            if (mag != 0.0) {
              double deg = std::atan2(vy, vx) * (180.0 / M_PI);
              if (deg >= 180.0) deg = -180.0;
              value = mag * (deg < 0.0 ? -1.0 : 1.0);
            }
            acc += value;
            field.signals(n, col) = acc;
          }
        } else {
          Vec2 p{static_cast<double>(x), static_cast<double>(y)};
          for (int n = 0; n < t; ++n) {
            acc += sampled_idg_value(flows[n], p.x, p.y);
            field.signals(n, col) = acc;
            const double dx = sample_bilinear(flows[n].vx, p.x, p.y);
            const double dy = sample_bilinear(flows[n].vy, p.x, p.y);
            p.x = std::min(std::max(p.x + dx, 0.0), static_cast<double>(w - 1));
            p.y = std::min(std::max(p.y + dy, 0.0), static_cast<double>(h - 1));
          }
        }
      },
      threads);
  return field;
}

std::optional<double> estimate_period(const MotionSignal& signal) {
  if (signal.kind != SignalKind::tfg)
    throw std::invalid_argument("estimate_period expects a TFG signal");
  const int n = signal.size();
  if (n < 4) return std::nullopt;

  std::vector<double> centered(n);
  const double mean = signal.values.mean();
  for (int i = 0; i < n; ++i) centered[i] = signal.values[i] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, centered);

  const int half = n / 2;
  if (half < 1) return std::nullopt;
  std::vector<double> mag(half);
  for (int k = 1; k <= half; ++k) mag[k - 1] = std::abs(spectrum[k]);

  int peak = 0;
  for (int i = 1; i < half; ++i)
    if (mag[i] > mag[peak]) peak = i;
  const double peak_mag = mag[peak];
  if (peak_mag <= 1e-12 * n) return std::nullopt;

  std::vector<double> sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + half / 2, sorted.end());
  double median = sorted[half / 2];
  if (half % 2 == 0 && half >= 2) {
    std::nth_element(sorted.begin(), sorted.begin() + half / 2 - 1, sorted.end());
    median = 0.5 * (median + sorted[half / 2 - 1]);
  }
  if (peak_mag < 3.0 * median) return std::nullopt;

  // parabolic refinement around the peak bin
  double k = peak + 1.0;  // spectrum bin index
  if (peak > 0 && peak < half - 1) {
    const double a = mag[peak - 1], b = mag[peak], c = mag[peak + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) {
      const double delta = 0.5 * (a - c) / denom;
      if (std::abs(delta) <= 0.5) k += delta;
    }
  }
  return static_cast<double>(n) / k;
}

}  // namespace tfg
