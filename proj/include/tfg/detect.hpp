#pragma once

#include <array>
#include <vector>

#include "tfg/motion_signal.hpp"
#include "tfg/types.hpp"

namespace tfg {

/// Pauses longer than this are ventricular arrest, shorter ones
/// missing beats.
constexpr double kArrestSeconds = 4.0;

enum class PauseClass { missing_beats, ventricular_arrest };

struct PauseInterval {
  int start_sample = 0;     // index into the short-time-variance signal
  int length_samples = 0;
  double length_seconds = 0.0;
  PauseClass classification = PauseClass::missing_beats;
};

struct PauseReport {
  std::vector<PauseInterval> intervals;
  double threshold = 0.2;
  int window = 8;
  int shift = 1;
  int min_length = 8;
  double fps = 29.0;
  int variance_length = 0;
};

/// Population variance over overlapping windows: output[j] covers
/// samples [j*shift, j*shift + window). Output length is
/// floor((N - window)/shift) + 1. Throws when the signal is shorter
/// than one window.
Eigen::ArrayXd short_time_variance(const MotionSignal& signal, int window = 8,
                                   int shift = 1);

/// Thresholds the short-time variance of a TFG: maximal runs of at
/// least min_length consecutive sub-threshold samples become pause
/// intervals, classified by duration against the 4-second rule.
PauseReport detect_pause(const MotionSignal& signal, double threshold = 0.2,
                         int window = 8, int shift = 1, int min_length = 8);

/// Per-pixel variance of the TFGs over the sequence; values outside
/// the mask are zero and ignored.
struct VarianceMap {
  Grid values;
  BinaryMask mask;

  int width() const { return static_cast<int>(values.cols()); }
  int height() const { return static_cast<int>(values.rows()); }
};

/// Population variance of every masked pixel's TFG. The mask must be a
/// subset of the field's mask.
VarianceMap variance_map(const TfgField& field, const BinaryMask& mask);

/// Masked pixels whose variance falls below rel_threshold x median of
/// the masked variances, cleaned by a radius-1 morphological opening.
BinaryMask detect_abnormal_region(const VarianceMap& map,
                                  double rel_threshold = 0.2);

enum class Quadrant { left, right, top, bottom };

/// Diagonal (x-shaped) partition of the mask bounding box about its
/// center; ties on the diagonals go to left, then top.
Quadrant quadrant_of(double dx, double dy);

struct Landmark {
  int x = 0;
  int y = 0;
  double variance = 0.0;
};

/// Six landmarks: per-quadrant variance minima (cavity-center
/// candidates) plus the two strongest variance maxima separated by at
/// least the suppression radius (valve candidates).
struct LandmarkSet {
  std::array<Landmark, 4> cavities;  // indexed by Quadrant
  std::array<Landmark, 2> valves;    // strongest first

  const Landmark& cavity(Quadrant q) const {
    return cavities[static_cast<int>(q)];
  }
};

LandmarkSet detect_landmarks(const VarianceMap& map,
                             double suppression_radius = 10.0);

}  // namespace tfg
