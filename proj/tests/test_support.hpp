#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tclab/image.hpp"

namespace tclab::testing {

inline std::vector<double> random_values(std::mt19937& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline GrayImage random_image(std::mt19937& rng, int width, int height, bool integral = true) {
  auto v = random_values(rng, static_cast<std::size_t>(width) * height, 0.0, 255.0);
  if (integral)
    for (double& x : v) x = std::floor(x);
  return GrayImage(width, height, std::move(v));
}

// Smooth horizontal-plus-vertical ramp with a gentle curve.
inline GrayImage gradient_image(int width, int height) {
  std::vector<double> v(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      v[static_cast<std::size_t>(y) * width + x] =
          20.0 + 180.0 * (0.6 * x / (width - 1.0) + 0.4 * (y * y) / ((height - 1.0) * (height - 1.0)));
  return GrayImage(width, height, std::move(v));
}

inline GrayImage constant_image(int width, int height, double value) {
  return GrayImage(width, height, std::vector<double>(static_cast<std::size_t>(width) * height, value));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double squared_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

#ifdef TCLAB_CORPUS_DIR
inline std::string corpus_path(const std::string& name) { return std::string(TCLAB_CORPUS_DIR) + "/" + name; }
#endif

}  // namespace tclab::testing
