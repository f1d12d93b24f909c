#pragma once

#include <optional>
#include <utility>

#include "tfg/types.hpp"

namespace tfg {

/// Configuration of the morphological myocardium pipeline.
struct SegmentParams {
  double sigma = 2.0;                    // Gaussian smoothing
  std::optional<double> threshold;       // fixed threshold; nullopt = Otsu
  int closing_radius = 3;                // disc radius for closing

  void validate() const;
};

/// Otsu threshold over a 256-bin histogram of [0, 1] intensities.
/// Returns the binarization cut; pixels >= the cut are foreground.
double otsu_threshold(const Grid& img);

/// Morphological dilation/erosion/closing/opening with a Euclidean
/// disc structuring element. Out-of-bounds neighbours are ignored by
/// dilation and treated as set by erosion.
BinaryMask dilate(const BinaryMask& mask, int radius);
BinaryMask erode(const BinaryMask& mask, int radius);
BinaryMask morphological_close(const BinaryMask& mask, int radius);
BinaryMask morphological_open(const BinaryMask& mask, int radius);

/// Fills enclosed background regions (4-connectivity flood from the
/// border).
BinaryMask fill_holes(const BinaryMask& mask);

/// Keeps the largest 4-connected foreground component (first in
/// row-major order on ties). Empty input yields an empty mask.
BinaryMask largest_component(const BinaryMask& mask);

/// Myocardium mask from the first frame: Gaussian smoothing, Otsu (or
/// fixed) binarization, closing, hole filling, largest component.
/// Throws AnalysisError when the resulting mask is empty.
BinaryMask segment_myocardium(const Frame& frame, const SegmentParams& params = {});

/// The masked pixel nearest the mask centroid (row-major tie-break).
std::pair<int, int> pick_myocardial_point(const BinaryMask& mask);

}  // namespace tfg
