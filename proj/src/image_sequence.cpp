#include "tfg/image_sequence.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "tfg/io/pgm.hpp"
#include "tfg/io/png.hpp"

namespace tfg {

namespace {

constexpr char kMagic[4] = {'T', 'F', 'G', 'S'};

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

ImageSequence load_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open sequence file: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("not a TFGS container: " + path.string());
  const auto w = static_cast<int>(get_u32(in));
  const auto h = static_cast<int>(get_u32(in));
  const auto n = static_cast<int>(get_u32(in));
  const double fps = get_f64(in);
  if (!in) throw IoError("truncated TFGS header: " + path.string());

  ImageSequence seq;
  seq.fps = fps;
  seq.frames.reserve(n);
  for (int f = 0; f < n; ++f) {
    Grid img(h, w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img(y, x) = get_f64(in);
    if (!in) throw IoError("truncated TFGS payload: " + path.string());
    seq.frames.push_back(std::move(img));
  }
  validate_sequence(seq);
  return seq;
}

ImageSequence load_directory(const std::filesystem::path& dir, double fps) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".png") files.push_back(entry.path());
  }
  if (files.size() < 2)
    throw IoError("sequence directory needs at least 2 PGM/PNG frames: " +
                  dir.string());
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });

  ImageSequence seq;
  seq.fps = fps;
  seq.frames.reserve(files.size());
  for (const auto& file : files) {
    auto ext = file.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    seq.frames.push_back(ext == ".pgm" ? io::read_pgm(file)
                                       : io::read_png_gray(file));
  }
  validate_sequence(seq);
  return seq;
}

}  // namespace

void validate_sequence(const ImageSequence& seq) {
  if (seq.frames.size() < 2)
    throw std::invalid_argument("ImageSequence needs at least 2 frames");
  if (!(seq.fps > 0.0)) throw std::invalid_argument("fps must be > 0");
  const auto h = seq.frames.front().rows();
  const auto w = seq.frames.front().cols();
  if (h <= 0 || w <= 0) throw std::invalid_argument("frames must be non-empty");
  for (size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    if (f.rows() != h || f.cols() != w)
      throw std::invalid_argument("frame " + std::to_string(i) +
                                  " dimensions differ from frame 0");
    if (!f.isFinite().all() || (f < 0.0).any() || (f > 1.0).any())
      throw std::invalid_argument("frame " + std::to_string(i) +
                                  " has intensities outside [0, 1]");
  }
}

ImageSequence make_sequence(std::vector<Frame> frames, double fps) {
  ImageSequence seq{std::move(frames), fps};
  validate_sequence(seq);
  return seq;
}

ImageSequence load_sequence(const std::filesystem::path& path, double fps) {
  if (!std::filesystem::exists(path))
    throw IoError("no such path: " + path.string());
  if (std::filesystem::is_directory(path)) {
    if (!(fps > 0.0)) throw std::invalid_argument("fps must be > 0");
    return load_directory(path, fps);
  }
  return load_container(path);
}

void save_sequence(const ImageSequence& seq, const std::filesystem::path& path) {
  validate_sequence(seq);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(seq.width()));
  put_u32(out, static_cast<std::uint32_t>(seq.height()));
  put_u32(out, static_cast<std::uint32_t>(seq.frame_count()));
  put_f64(out, seq.fps);
  for (const Frame& f : seq.frames)
    for (int y = 0; y < f.rows(); ++y)
      for (int x = 0; x < f.cols(); ++x) put_f64(out, f(y, x));
  out.flush();
  if (!out) throw IoError("failed writing sequence: " + path.string());
}

void save_frames(const ImageSequence& seq, const std::filesystem::path& dir,
                 FrameFormat format) {
  validate_sequence(seq);
  std::filesystem::create_directories(dir);
  char name[32];
  for (int i = 0; i < seq.frame_count(); ++i) {
    std::snprintf(name, sizeof(name), "frame_%04d.%s", i,
                  format == FrameFormat::pgm ? "pgm" : "png");
    const auto path = dir / name;
    if (format == FrameFormat::pgm)
      io::write_pgm(path, seq.frames[i]);
    else
      io::write_png_gray(path, seq.frames[i]);
  }
}

}  // namespace tfg
