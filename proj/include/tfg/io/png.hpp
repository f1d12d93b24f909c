#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tfg/types.hpp"

namespace tfg::io {

/// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 3 * width * height

  static RgbImage filled(int width, int height, std::uint8_t r, std::uint8_t g,
                         std::uint8_t b);
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

/// Reads an 8-bit grayscale PNG; intensities scaled by 1/255.
/// Color, palette, alpha or 16-bit inputs are rejected.
Grid read_png_gray(const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG; intensities quantized with round(v * 255).
void write_png_gray(const std::filesystem::path& path, const Grid& img);

/// Writes an 8-bit RGB PNG.
void write_png_rgb(const std::filesystem::path& path, const RgbImage& img);

/// Grayscale frame expanded to RGB, for overlays.
RgbImage to_rgb(const Grid& img);

}  // namespace tfg::io
