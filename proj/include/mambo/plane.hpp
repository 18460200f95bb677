#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mambo/errors.hpp"
#include "mambo/rng.hpp"

namespace mambo {

// Single-channel real-valued raster. The universal pixel container; data
// range is documented per use (most pipeline planes live in [0,1]).
struct Plane {
  int rows = 0;
  int cols = 0;
  std::vector<float> v;

  Plane() = default;
  Plane(int r, int c, float fill = 0.0f) : rows(r), cols(c), v(static_cast<size_t>(r) * c, fill) {}

  float& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  float at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }

  size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }
  bool same_shape(const Plane& o) const { return rows == o.rows && cols == o.cols; }

  bool operator==(const Plane& o) const { return rows == o.rows && cols == o.cols && v == o.v; }
};

inline void require_same_shape(const Plane& a, const Plane& b, const char* what) {
  if (!a.same_shape(b))
    throw DataError(std::string(what) + ": shape mismatch " + std::to_string(a.rows) + "x" +
                    std::to_string(a.cols) + " vs " + std::to_string(b.rows) + "x" +
                    std::to_string(b.cols));
}

inline float plane_min(const Plane& p) {
  float m = std::numeric_limits<float>::infinity();
  for (float x : p.v) m = std::min(m, x);
  return m;
}

inline float plane_max(const Plane& p) {
  float m = -std::numeric_limits<float>::infinity();
  for (float x : p.v) m = std::max(m, x);
  return m;
}

inline double plane_sum(const Plane& p) {
  double s = 0.0;
  for (float x : p.v) s += x;
  return s;
}

inline Plane flip_horizontal(const Plane& p) {
  Plane out(p.rows, p.cols);
  for (int r = 0; r < p.rows; ++r)
    for (int c = 0; c < p.cols; ++c) out.at(r, c) = p.at(r, p.cols - 1 - c);
  return out;
}

inline Plane clamp01(const Plane& p) {
  Plane out = p;
  for (float& x : out.v) x = std::min(1.0f, std::max(0.0f, x));
  return out;
}

// Crop with bounds check.
inline Plane crop(const Plane& p, int top, int left, int h, int w) {
  if (top < 0 || left < 0 || top + h > p.rows || left + w > p.cols)
    throw DataError("crop: window out of bounds");
  Plane out(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) out.at(r, c) = p.at(top + r, left + c);
  return out;
}

// Crop that reads whatever overlaps the image and leaves zeros elsewhere.
inline Plane crop_zero_padded(const Plane& p, int top, int left, int h, int w) {
  Plane out(h, w, 0.0f);
  int r0 = std::max(0, -top), r1 = std::min(h, p.rows - top);
  int c0 = std::max(0, -left), c1 = std::min(w, p.cols - left);
  for (int r = r0; r < r1; ++r)
    for (int c = c0; c < c1; ++c) out.at(r, c) = p.at(top + r, left + c);
  return out;
}

inline void paste(Plane& dst, const Plane& src, int top, int left) {
  if (top < 0 || left < 0 || top + src.rows > dst.rows || left + src.cols > dst.cols)
    throw DataError("paste: window out of bounds");
  for (int r = 0; r < src.rows; ++r)
    for (int c = 0; c < src.cols; ++c) dst.at(top + r, left + c) = src.at(r, c);
}

inline Plane fill_normal(int rows, int cols, Rng& rng) {
  Plane p(rows, cols);
  for (float& x : p.v) x = static_cast<float>(rng.normal());
  return p;
}

inline bool has_non_finite(const Plane& p) {
  for (float x : p.v)
    if (!std::isfinite(x)) return true;
  return false;
}

// Integer-factor nearest upsample (each pixel repeated factor x factor).
inline Plane upscale_nearest(const Plane& p, int factor) {
  if (factor < 1) throw DataError("upscale_nearest: factor must be >= 1");
  Plane out(p.rows * factor, p.cols * factor);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) out.at(r, c) = p.at(r / factor, c / factor);
  return out;
}

}  // namespace mambo
