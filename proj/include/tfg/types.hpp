#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tfg {

using Scalar = double;

/// Dense scalar grid, indexed (y, x): rows = image height, cols = width.
using Grid = Eigen::ArrayXXd;

/// Dense boolean grid with the same (y, x) indexing as Grid.
using MaskGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// A single grayscale frame with intensities in [0, 1].
using Frame = Grid;

/// Real-valued pixel coordinates; x runs along columns, y along rows.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Filesystem / format problems (unreadable path, bad magic, ...).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data-dependent failures of an analysis stage (empty segmentation,
/// empty quadrant, ...), as opposed to caller contract violations.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary pixel mask over an image grid.
struct BinaryMask {
  MaskGrid bits;  // (height, width)

  BinaryMask() = default;
  explicit BinaryMask(MaskGrid b) : bits(std::move(b)) {}
  static BinaryMask zeros(int height, int width) {
    return BinaryMask(MaskGrid::Constant(height, width, false));
  }

  int width() const { return static_cast<int>(bits.cols()); }
  int height() const { return static_cast<int>(bits.rows()); }
  Eigen::Index count() const { return bits.count(); }
  bool empty() const { return count() == 0; }
  bool at(int x, int y) const { return bits(y, x); }
  void set(int x, int y, bool v = true) { bits(y, x) = v; }
};

inline bool same_size(const BinaryMask& a, const BinaryMask& b) {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace tfg
