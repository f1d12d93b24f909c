#pragma once

#include <filesystem>
#include <string>

#include "tfg/detect.hpp"
#include "tfg/motion_signal.hpp"
#include "tfg/optical_flow.hpp"

namespace tfg::io {

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// "frame,value" rows; the frame column is the 1-based transition
/// index of the sample.
void write_signal_csv(const std::filesystem::path& path, const MotionSignal& s);

/// "sample,variance" rows for a short-time-variance series; the sample
/// column is the window start index.
void write_variance_series_csv(const std::filesystem::path& path,
                               const Eigen::ArrayXd& variance);

/// "x,y,vx,vy" rows in row-major pixel order.
void write_flow_csv(const std::filesystem::path& path, const FlowField& f);

/// "x,y,variance" rows for masked pixels, row-major.
void write_variance_csv(const std::filesystem::path& path, const VarianceMap& m);

/// "frame,tfg,variance" rows; the variance cell is empty for samples
/// without a complete window.
void write_pause_plot_csv(const std::filesystem::path& path,
                          const MotionSignal& tfg_signal,
                          const Eigen::ArrayXd& variance);

}  // namespace tfg::io
