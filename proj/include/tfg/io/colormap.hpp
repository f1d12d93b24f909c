#pragma once

#include <cstdint>

#include "tfg/io/png.hpp"
#include "tfg/types.hpp"

namespace tfg::io {

/// Viridis sample at t in [0, 1] (linear interpolation between anchors).
void viridis(double t, std::uint8_t& r, std::uint8_t& g, std::uint8_t& b);

/// Min-max normalized pseudo-color rendering of a scalar grid;
/// unmasked pixels are black. A constant grid maps to the low end.
RgbImage pseudo_color(const Grid& values, const BinaryMask& mask);

}  // namespace tfg::io
