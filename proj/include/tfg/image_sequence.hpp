#pragma once

#include <filesystem>
#include <vector>

#include "tfg/types.hpp"

namespace tfg {

/// Ordered stack of equal-sized grayscale frames. Frames hold
/// intensities in [0, 1]; immutable by convention after construction.
struct ImageSequence {
  std::vector<Frame> frames;
  double fps = 29.0;

  int width() const { return frames.empty() ? 0 : static_cast<int>(frames.front().cols()); }
  int height() const { return frames.empty() ? 0 : static_cast<int>(frames.front().rows()); }
  int frame_count() const { return static_cast<int>(frames.size()); }
};

/// Validates the ImageSequence invariants: >= 2 frames, identical
/// dimensions, intensities in [0, 1], fps > 0. Throws
/// std::invalid_argument on violation.
void validate_sequence(const ImageSequence& seq);

/// Builds a validated sequence from frames.
ImageSequence make_sequence(std::vector<Frame> frames, double fps);

/// Loads a sequence from either a directory of 8-bit PGM/PNG frames
/// (lexicographic filename order, intensities scaled by 1/255) or a
/// single raw container file written by save_sequence. For container
/// files the stored fps wins; the fps argument applies to directories.
ImageSequence load_sequence(const std::filesystem::path& path, double fps = 29.0);

/// Writes the raw container: magic "TFGS"; width, height, frame count
/// as u32 little-endian; fps as f64 little-endian; then each frame
/// row-major as f64 little-endian. load_sequence inverts it exactly.
void save_sequence(const ImageSequence& seq, const std::filesystem::path& path);

enum class FrameFormat { pgm, png };

/// Writes one 8-bit file per frame (frame_0000.pgm, ...) into dir,
/// quantizing intensities with round(v * 255).
void save_frames(const ImageSequence& seq, const std::filesystem::path& dir,
                 FrameFormat format = FrameFormat::pgm);

}  // namespace tfg
