#pragma once

#include <png.h>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "mambo/errors.hpp"
#include "mambo/plane.hpp"

namespace mambo {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw DataError("cannot open file: " + path);
  return f;
}

inline int pgm_next_token(std::FILE* f, std::string& tok) {
  tok.clear();
  int ch;
  for (;;) {
    ch = std::fgetc(f);
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = std::fgetc(f);
      continue;
    }
    if (ch == EOF) return 0;
    if (!std::isspace(ch)) break;
  }
  while (ch != EOF && !std::isspace(ch)) {
    tok.push_back(static_cast<char>(ch));
    ch = std::fgetc(f);
  }
  return 1;
}

}  // namespace detail

// Binary PGM (P5). 16-bit samples are big-endian per the netpbm convention;
// 16-bit values are divided by 65535, 8-bit by 255.
inline Plane read_pgm(const std::string& path) {
  auto f = detail::open_file(path, "rb");
  std::string tok;
  if (!detail::pgm_next_token(f.get(), tok) || tok != "P5") throw DataError("not a P5 PGM: " + path);
  auto next_int = [&](const char* what) {
    if (!detail::pgm_next_token(f.get(), tok)) throw DataError(std::string("truncated PGM header: ") + what);
    return std::stol(tok);
  };
  long w = next_int("width"), h = next_int("height"), maxval = next_int("maxval");
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) throw DataError("bad PGM header: " + path);
  Plane p(static_cast<int>(h), static_cast<int>(w));
  size_t n = p.size();
  if (maxval < 256) {
    std::vector<uint8_t> buf(n);
    if (std::fread(buf.data(), 1, n, f.get()) != n) throw DataError("truncated PGM data: " + path);
    for (size_t i = 0; i < n; ++i) p.v[i] = static_cast<float>(buf[i]) / static_cast<float>(maxval);
  } else {
    std::vector<uint8_t> buf(n * 2);
    if (std::fread(buf.data(), 1, n * 2, f.get()) != n * 2) throw DataError("truncated PGM data: " + path);
    for (size_t i = 0; i < n; ++i) {
      uint16_t val = static_cast<uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]);
      p.v[i] = static_cast<float>(val) / static_cast<float>(maxval);
    }
  }
  return p;
}

// Binary mask as P5 with values {0,255}; nonzero input pixels map to 255.
inline void write_pgm_mask(const std::string& path, const Plane& mask) {
  auto f = detail::open_file(path, "wb");
  std::fprintf(f.get(), "P5\n%d %d\n255\n", mask.cols, mask.rows);
  std::vector<uint8_t> buf(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) buf[i] = mask.v[i] != 0.0f ? 255 : 0;
  if (std::fwrite(buf.data(), 1, buf.size(), f.get()) != buf.size())
    throw DataError("short write: " + path);
}

// 16-bit PGM from a [0,1] plane.
inline void write_pgm16(const std::string& path, const Plane& p) {
  auto f = detail::open_file(path, "wb");
  std::fprintf(f.get(), "P5\n%d %d\n65535\n", p.cols, p.rows);
  std::vector<uint8_t> buf(p.size() * 2);
  for (size_t i = 0; i < p.size(); ++i) {
    float x = std::min(1.0f, std::max(0.0f, p.v[i]));
    auto val = static_cast<uint16_t>(std::lround(x * 65535.0));
    buf[2 * i] = static_cast<uint8_t>(val >> 8);
    buf[2 * i + 1] = static_cast<uint8_t>(val & 0xff);
  }
  if (std::fwrite(buf.data(), 1, buf.size(), f.get()) != buf.size())
    throw DataError("short write: " + path);
}

// Grayscale PNG, 8- or 16-bit. Rejects color images.
inline Plane read_png_gray(const std::string& path) {
  auto f = detail::open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw DataError("png init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw DataError("png init failed");
  }
  std::vector<png_bytep> row_ptrs;
  std::vector<uint8_t> data;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("png read failed: " + path);
  }
  png_init_io(png, f.get());
  png_read_info(png, info);
  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  else if (color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("not a grayscale PNG: " + path);
  }
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);
  depth = png_get_bit_depth(png, info);
  size_t rowbytes = png_get_rowbytes(png, info);
  data.resize(rowbytes * h);
  row_ptrs.resize(h);
  for (png_uint_32 r = 0; r < h; ++r) row_ptrs[r] = data.data() + r * rowbytes;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Plane p(static_cast<int>(h), static_cast<int>(w));
  if (depth == 16) {
    for (size_t i = 0; i < p.size(); ++i) {
      uint16_t val = static_cast<uint16_t>((data[2 * i] << 8) | data[2 * i + 1]);
      p.v[i] = static_cast<float>(val) / 65535.0f;
    }
  } else {
    for (size_t i = 0; i < p.size(); ++i) p.v[i] = static_cast<float>(data[i]) / 255.0f;
  }
  return p;
}

// 16-bit grayscale PNG from a [0,1] plane.
inline void write_png_gray16(const std::string& path, const Plane& p) {
  auto f = detail::open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw DataError("png init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw DataError("png init failed");
  }
  std::vector<uint8_t> data(p.size() * 2);
  std::vector<png_bytep> row_ptrs(p.rows);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw DataError("png write failed: " + path);
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, p.cols, p.rows, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (size_t i = 0; i < p.size(); ++i) {
    float x = std::min(1.0f, std::max(0.0f, p.v[i]));
    auto val = static_cast<uint16_t>(std::lround(x * 65535.0));
    data[2 * i] = static_cast<uint8_t>(val >> 8);
    data[2 * i + 1] = static_cast<uint8_t>(val & 0xff);
  }
  for (int r = 0; r < p.rows; ++r) row_ptrs[r] = data.data() + static_cast<size_t>(r) * p.cols * 2;
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// Dispatch on extension (.png vs .pgm).
inline Plane read_image(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".png" || ext == ".PNG") return read_png_gray(path);
  if (ext == ".pgm" || ext == ".PGM") return read_pgm(path);
  throw DataError("unsupported image extension: " + path);
}

inline void write_image(const std::string& path, const Plane& p) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".png" || ext == ".PNG") return write_png_gray16(path, p);
  if (ext == ".pgm" || ext == ".PGM") return write_pgm16(path, p);
  throw DataError("unsupported image extension: " + path);
}

}  // namespace mambo
