#pragma once

#include <filesystem>

#include "tfg/types.hpp"

namespace tfg::io {

/// Reads a binary 8-bit PGM (P5, maxval 255); intensities scaled by 1/255.
Grid read_pgm(const std::filesystem::path& path);

/// Writes a binary 8-bit PGM; intensities quantized with round(v * 255).
void write_pgm(const std::filesystem::path& path, const Grid& img);

}  // namespace tfg::io
