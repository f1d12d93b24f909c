#include "tfg/io/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <vector>

namespace tfg::io {

namespace {

// Reads the next PGM header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

}  // namespace

Grid read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open PGM file: " + path.string());
  if (next_token(in) != "P5")
    throw IoError("not a binary PGM (P5): " + path.string());
  const std::string ws = next_token(in);
  const std::string hs = next_token(in);
  const std::string ms = next_token(in);
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(ws);
    h = std::stoi(hs);
    maxval = std::stoi(ms);
  } catch (const std::exception&) {
    throw IoError("malformed PGM header: " + path.string());
  }
  if (w <= 0 || h <= 0) throw IoError("bad PGM dimensions: " + path.string());
  if (maxval != 255)
    throw IoError("unsupported PGM maxval (expected 255): " + path.string());

  std::vector<std::uint8_t> buf(static_cast<size_t>(w) * h);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw IoError("truncated PGM payload: " + path.string());

  Grid img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img(y, x) = buf[static_cast<size_t>(y) * w + x] / 255.0;
  return img;
}

void write_pgm(const std::filesystem::path& path, const Grid& img) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write PGM file: " + path.string());
  out << "P5\n" << w << " " << h << "\n255\n";
  std::vector<std::uint8_t> buf(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = std::min(1.0, std::max(0.0, img(y, x)));
      buf[static_cast<size_t>(y) * w + x] =
          static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing PGM payload: " + path.string());
}

}  // namespace tfg::io
