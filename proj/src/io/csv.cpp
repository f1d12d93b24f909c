#include "tfg/io/csv.hpp"

#include <charconv>
#include <fstream>

namespace tfg::io {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write CSV file: " + path.string());
  return out;
}

}  // namespace

void write_signal_csv(const std::filesystem::path& path, const MotionSignal& s) {
  auto out = open_csv(path);
  out << "frame,value\n";
  for (int i = 0; i < s.size(); ++i)
    out << (i + 1) << "," << format_double(s.values[i]) << "\n";
  if (!out) throw IoError("failed writing CSV: " + path.string());
}

void write_variance_series_csv(const std::filesystem::path& path,
                               const Eigen::ArrayXd& variance) {
  auto out = open_csv(path);
  out << "sample,variance\n";
  for (Eigen::Index i = 0; i < variance.size(); ++i)
    out << i << "," << format_double(variance[i]) << "\n";
  if (!out) throw IoError("failed writing CSV: " + path.string());
}

void write_flow_csv(const std::filesystem::path& path, const FlowField& f) {
  auto out = open_csv(path);
  out << "x,y,vx,vy\n";
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x)
      out << x << "," << y << "," << format_double(f.vx(y, x)) << ","
          << format_double(f.vy(y, x)) << "\n";
  if (!out) throw IoError("failed writing CSV: " + path.string());
}

void write_variance_csv(const std::filesystem::path& path, const VarianceMap& m) {
  auto out = open_csv(path);
  out << "x,y,variance\n";
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.mask.at(x, y))
        out << x << "," << y << "," << format_double(m.values(y, x)) << "\n";
  if (!out) throw IoError("failed writing CSV: " + path.string());
}

void write_pause_plot_csv(const std::filesystem::path& path,
                          const MotionSignal& tfg_signal,
                          const Eigen::ArrayXd& variance) {
  auto out = open_csv(path);
  out << "frame,tfg,variance\n";
  for (int i = 0; i < tfg_signal.size(); ++i) {
    out << (i + 1) << "," << format_double(tfg_signal.values[i]) << ",";
    if (i < variance.size()) out << format_double(variance[i]);
    out << "\n";
  }
  if (!out) throw IoError("failed writing CSV: " + path.string());
}

}  // namespace tfg::io
