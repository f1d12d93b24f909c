#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfg/image_sequence.hpp"
#include "tfg/types.hpp"

namespace tfg {

/// Oscillating bright Gaussian bob on a dark background. The bob's
/// horizontal offset from equilibrium is exactly A*cos(w*t + phase);
/// the oscillation line is tilted a fixed few degrees from horizontal
/// (kPendulumTiltDeg) so the motion direction never sits on the
/// direction-quantization boundaries at 0/180 degrees. Positions are
/// prescribed analytically (small-angle timing), not simulated.
struct PendulumSpec {
  int width = 64;
  int height = 64;
  double amplitude = 10.0;          // A, pixels (horizontal projection)
  double angular_frequency = 2.0 * M_PI / 25.0;  // w, radians/frame
  double phase = -M_PI / 2.0;       // phi, radians
  double pendulum_length = 100.0;   // L; documentation only, w = sqrt(g/L)
  int frames = 100;
  double bob_radius = 6.0;          // rendered Gaussian sigma = radius/2
  double fps = 29.0;

  void validate() const;
};

/// Tilt of the pendulum's oscillation line below horizontal.
constexpr double kPendulumTiltDeg = 12.0;

/// Pulsating bright annulus with optional beat pause, frozen angular
/// sector, and seeded multiplicative speckle. The wall has a Gaussian
/// radial profile whose FWHM equals wall_thickness. During a pause the
/// phase clock stops, so motion resumes continuously from the frozen
/// radius. Inside the frozen sector the wall stays at its frame-0
/// radius for the whole sequence (a short angular blend just outside
/// the sector avoids a shear discontinuity).
struct RingPhantomSpec {
  int width = 64;
  int height = 64;
  double center_x = -1.0;  // < 0: image center
  double center_y = -1.0;
  double mean_radius = 20.0;
  double wall_thickness = 8.0;      // FWHM of the radial profile
  double pulse_amplitude = 3.0;
  double period = 25.0;             // frames per cycle
  int frames = 100;
  double fps = 29.0;
  double speckle_contrast = 0.0;
  std::optional<std::pair<int, int>> pause;  // (start frame 0-based, length)
  std::optional<std::pair<double, double>> frozen_sector;  // degrees [0,360)
  std::uint64_t rng_seed = 0;

  void validate() const;
  Vec2 center() const;
};

/// A labeled point with its analytic per-frame position.
struct LabeledTrack {
  std::string label;
  std::vector<Vec2> positions;
};

struct PendulumTruth {
  Vec2 equilibrium;
  Eigen::ArrayXd x_offset;  // A*cos(w*t + phase) per frame
  double amplitude = 0.0;
  double period_frames = 0.0;
  double bob_sigma = 0.0;
};

struct RingTruth {
  Vec2 center;
  Eigen::ArrayXd radius;  // wall radius per frame (outside the frozen sector)
  double mean_radius = 0.0;
  double wall_thickness = 0.0;
  double pulse_amplitude = 0.0;
  double period_frames = 0.0;
  std::optional<std::pair<int, int>> pause;
  std::optional<std::pair<double, double>> frozen_sector;

  /// Angle of (x, y) about the center, degrees in [0, 360).
  double angle_deg(double x, double y) const;
  bool in_frozen_sector(double x, double y) const;
  /// Pixels within half a wall thickness of the frame-0 wall radius.
  BinaryMask band_mask(int width, int height) const;
  /// band_mask restricted to the frozen sector.
  BinaryMask sector_mask(int width, int height) const;
};

struct GroundTruth {
  double fps = 29.0;
  int frames = 0;
  std::vector<LabeledTrack> tracks;
  std::optional<PendulumTruth> pendulum;
  std::optional<RingTruth> ring;

  const LabeledTrack& track(const std::string& label) const;
};

std::pair<ImageSequence, GroundTruth> gen_pendulum(const PendulumSpec& spec);
std::pair<ImageSequence, GroundTruth> gen_ring(const RingPhantomSpec& spec);

}  // namespace tfg
