#pragma once

#include <optional>
#include <vector>

#include "tfg/optical_flow.hpp"
#include "tfg/types.hpp"

namespace tfg {

enum class SignalKind { idg, tfg };
enum class TrackMode { fixed, tracked };

/// A point's per-frame displacement signal: either the signed
/// instantaneous displacement (idg, pixels/frame) or its running sum
/// (tfg, cumulative pixels).
struct MotionSignal {
  SignalKind kind = SignalKind::idg;
  Eigen::ArrayXd values;
  double fps = 29.0;

  int size() const { return static_cast<int>(values.size()); }
};

/// A point of interest followed over the sequence. In fixed mode every
/// position equals start; in tracked mode positions advance by the
/// bilinear-sampled flow and are clamped to the image bounds (clamping
/// is flagged).
struct PointTrack {
  Vec2 start;
  TrackMode mode = TrackMode::fixed;
  std::vector<Vec2> positions;
  bool clamped = false;
};

/// Direction quantization: -1 for theta in [-180, 0), +1 for theta in
/// [0, 180). Throws outside [-180, 180).
int quantize_direction(double theta_deg);

/// Builds a track of flows.size() + 1 positions starting at start.
/// start must lie inside the field bounds.
PointTrack make_track(Vec2 start, TrackMode mode,
                      const std::vector<FlowField>& flows);

/// Signed displacement signal at the track: values[n] is the sampled
/// flow magnitude at position n times the quantized direction.
MotionSignal idg(const PointTrack& track, const std::vector<FlowField>& flows,
                 double fps);

/// Running (prefix) sum of an idg signal: the TFG.
MotionSignal to_tfg(const MotionSignal& idg_signal);

/// One TFG per masked pixel of frame 1, stored column-per-pixel.
struct TfgField {
  int width = 0;
  int height = 0;
  BinaryMask mask;
  Eigen::MatrixXd signals;             // rows = time, cols = masked pixels
  std::vector<int> pixel_index;        // row-major linear index per column
  double fps = 29.0;

  int samples() const { return static_cast<int>(signals.rows()); }
  int pixel_count() const { return static_cast<int>(signals.cols()); }
  /// Column of the signal at pixel (x, y), or -1 when unmasked.
  int column_of(int x, int y) const;
  MotionSignal signal_at(int x, int y) const;
};

/// TFGs for all masked pixels (full frame when mask is null).
TfgField tfg_field(const ImageSequence& seq, const std::vector<FlowField>& flows,
                   const BinaryMask* mask = nullptr,
                   TrackMode mode = TrackMode::fixed, int threads = 0);

/// Dominant period (frames/cycle) from the magnitude-spectrum peak of
/// the mean-removed signal, refined by parabolic interpolation.
/// Returns nullopt when the peak's prominence is below 3x the median
/// spectral magnitude or the signal is too short / degenerate.
std::optional<double> estimate_period(const MotionSignal& signal);

}  // namespace tfg
