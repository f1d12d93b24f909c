#include "tfg/io/png.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

namespace tfg::io {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::filesystem::path& path, const char* what) {
  throw IoError(std::string(what) + ": " + path.string());
}

}  // namespace

RgbImage RgbImage::filled(int width, int height, std::uint8_t r, std::uint8_t g,
                          std::uint8_t b) {
  RgbImage img;
  img.width = width;
  img.height = height;
  img.data.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < img.data.size(); i += 3) {
    img.data[i] = r;
    img.data[i + 1] = g;
    img.data[i + 2] = b;
  }
  return img;
}

void RgbImage::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const size_t i = (static_cast<size_t>(y) * width + x) * 3;
  data[i] = r;
  data[i + 1] = g;
  data[i + 2] = b;
}

Grid read_png_gray(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) fail(path, "cannot open PNG file");

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "png_create_info_struct failed");
  }
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  int w = 0, h = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "PNG decode error");
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);
  w = static_cast<int>(png_get_image_width(png, info));
  h = static_cast<int>(png_get_image_height(png, info));
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("PNG is not 8-bit grayscale (color inputs are rejected): " +
                  path.string());
  }
  pixels.resize(static_cast<size_t>(w) * h);
  rows.resize(h);
  for (int y = 0; y < h; ++y) rows[y] = pixels.data() + static_cast<size_t>(y) * w;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Grid img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img(y, x) = pixels[static_cast<size_t>(y) * w + x] / 255.0;
  return img;
}

namespace {

void write_png_impl(const std::filesystem::path& path, int w, int h,
                    int color_type, const std::uint8_t* data, size_t stride) {
  FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) fail(path, "cannot write PNG file");

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(path, "png_create_info_struct failed");
  }
  std::vector<png_bytep> rows(h);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(path, "PNG encode error");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, w, h, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < h; ++y)
    rows[y] = const_cast<png_bytep>(data + static_cast<size_t>(y) * stride);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png_gray(const std::filesystem::path& path, const Grid& img) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  std::vector<std::uint8_t> buf(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = std::min(1.0, std::max(0.0, img(y, x)));
      buf[static_cast<size_t>(y) * w + x] =
          static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  write_png_impl(path, w, h, PNG_COLOR_TYPE_GRAY, buf.data(), w);
}

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img) {
  write_png_impl(path, img.width, img.height, PNG_COLOR_TYPE_RGB,
                 img.data.data(), static_cast<size_t>(img.width) * 3);
}

RgbImage to_rgb(const Grid& img) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  RgbImage out;
  out.width = w;
  out.height = h;
  out.data.resize(static_cast<size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = std::min(1.0, std::max(0.0, img(y, x)));
      const auto g = static_cast<std::uint8_t>(std::lround(v * 255.0));
      out.set(x, y, g, g, g);
    }
  return out;
}

}  // namespace tfg::io
