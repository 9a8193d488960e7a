#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "r0/errors.hpp"

namespace r0 {

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sq_dist: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// dst += s * src
inline void add_scaled(std::vector<double>& dst, double s,
                       std::span<const double> src) {
  if (dst.size() != src.size())
    throw std::invalid_argument("add_scaled: size mismatch");
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += s * src[i];
}

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace r0
