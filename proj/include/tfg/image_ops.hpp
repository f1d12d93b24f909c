#pragma once

#include "tfg/types.hpp"

namespace tfg {

// Low-level grid kernels shared by the flow solver, phantoms and
// segmentation. All of them replicate the border sample (Neumann
// boundary) where a neighbourhood leaves the grid.

/// Separable Gaussian blur; sigma <= 0 returns the input unchanged.
/// Kernel radius is ceil(3*sigma).
Grid gaussian_blur(const Grid& img, double sigma);

/// Central-difference d/dx (along columns), replicated edges.
Grid gradient_x(const Grid& img);

/// Central-difference d/dy (along rows), replicated edges.
Grid gradient_y(const Grid& img);

/// Bilinear sample at real coordinates, clamped to the grid.
double sample_bilinear(const Grid& img, double x, double y);

/// Bilinear resize with pixel-center alignment.
Grid resize_bilinear(const Grid& img, int new_height, int new_width);

/// Samples img at (x + vx, y + vy) per pixel, bilinear, clamped.
Grid warp_bilinear(const Grid& img, const Grid& vx, const Grid& vy);

/// True iff every element is finite.
bool all_finite(const Grid& img);

}  // namespace tfg
