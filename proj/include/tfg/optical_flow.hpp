#pragma once

#include <vector>

#include "tfg/image_sequence.hpp"
#include "tfg/types.hpp"

namespace tfg {

/// Dense per-pixel displacement between two consecutive frames,
/// in pixels/frame along x (columns) and y (rows).
struct FlowField {
  Grid vx, vy;

  int width() const { return static_cast<int>(vx.cols()); }
  int height() const { return static_cast<int>(vx.rows()); }
};

/// Configuration of the variational solver. The energy combines a
/// brightness-constancy data term, a gradient-constancy data term
/// weighted by gradient_weight, and quadratic smoothness of the flow
/// weighted by smoothness_weight.
struct FlowParams {
  double smoothness_weight = 15.0;
  double gradient_weight = 5.0;
  int pyramid_levels = 4;
  double scale_factor = 0.5;
  int iterations_per_level = 100;
  double convergence_epsilon = 1e-4;

  void validate() const;
};

/// Magnitude (pixels/frame) and direction (degrees in [-180, 180),
/// counterclockwise from +x; 0 for the zero vector).
struct PolarFlow {
  Grid magnitude;
  Grid angle_deg;
};

/// Per-level relaxation record: energy after each sweep.
struct FlowStats {
  struct Level {
    int width = 0;
    int height = 0;
    int iterations = 0;
    std::vector<double> energies;
  };
  std::vector<Level> levels;
};

/// Estimates dense flow from a to b by minimizing the discretized
/// energy with Gauss-Seidel relaxation inside a coarse-to-fine pyramid
/// (scale_factor per level, b warped toward a between levels). Each
/// level stops after iterations_per_level sweeps or when the maximum
/// per-pixel update falls below convergence_epsilon.
FlowField compute_flow(const Frame& a, const Frame& b,
                       const FlowParams& params = {},
                       FlowStats* stats = nullptr);

/// Per-pixel magnitude/angle decomposition of a flow field.
PolarFlow to_polar(const FlowField& field);

/// Flow between every consecutive frame pair: N-1 fields for N frames,
/// field n mapping frame n to frame n+1. Pairs are evaluated
/// concurrently; output order is by frame index.
std::vector<FlowField> flow_series(const ImageSequence& seq,
                                   const FlowParams& params = {},
                                   int threads = 0);

}  // namespace tfg
