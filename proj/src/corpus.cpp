#include "tclab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace tclab::corpus {

namespace {

// std::mt19937 output is fixed by the standard; the distributions are not,
// so uniforms and normals are derived by hand.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}

  double uniform() { return (static_cast<double>(engine_()) + 0.5) / 4294967296.0; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937 engine_;
};

GrayImage quantize(int width, int height, const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [](double x) { return std::clamp(std::floor(x + 0.5), 0.0, 255.0); });
  return GrayImage(width, height, std::move(out));
}

// Rescales linearly so the values span [lo, hi].
void stretch(std::vector<double>& v, double lo, double hi) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double a = *mn, b = *mx;
  if (b == a) return;
  for (double& x : v) x = lo + (hi - lo) * (x - a) / (b - a);
}

}  // namespace

GrayImage gradient_edges(int width, int height, std::uint32_t seed) {
  Rng rng(seed);

  struct Edge {
    double nx, ny, offset, step;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    // Angles kept away from the axes so edges do not align with block grids.
    const double angle = rng.uniform(0.15, 0.85) * std::numbers::pi / 2.0 + (i % 2) * std::numbers::pi / 2.0;
    const double cx = rng.uniform(0.2, 0.8) * width;
    const double cy = rng.uniform(0.2, 0.8) * height;
    const double nx = std::cos(angle), ny = std::sin(angle);
    edges.push_back({nx, ny, nx * cx + ny * cy, rng.uniform(-35.0, 35.0)});
  }
  const double cx = rng.uniform(0.3, 0.7) * width;
  const double cy = rng.uniform(0.3, 0.7) * height;
  const double radius = 0.45 * std::max(width, height);

  std::vector<double> v(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double r = std::hypot(x - cx, y - cy) / radius;
      double value = 70.0 + 110.0 * std::exp(-r * r) + 0.04 * (x - y);
      for (const Edge& e : edges) {
        const double dist = e.nx * x + e.ny * y - e.offset;
        value += e.step / (1.0 + std::exp(-dist / 1.5));
      }
      v[static_cast<std::size_t>(y) * width + x] = value;
    }
  }
  stretch(v, 20.0, 235.0);
  for (double& x : v) x += 1.5 * rng.normal();
  return quantize(width, height, v);
}

GrayImage texture(int width, int height, std::uint32_t seed) {
  Rng rng(seed);

  struct Wave {
    double fx, fy, phase, amplitude;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 48; ++i) {
    const double freq = rng.uniform(0.004, 0.06);  // cycles per pixel
    const double angle = rng.uniform(0.0, std::numbers::pi);
    waves.push_back({freq * std::cos(angle), freq * std::sin(angle), rng.uniform(0.0, 2.0 * std::numbers::pi),
                     0.02 / freq});
  }

  std::vector<double> v(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double value = 0.0;
      for (const Wave& w : waves)
        value += w.amplitude * std::sin(2.0 * std::numbers::pi * (w.fx * x + w.fy * y) + w.phase);
      v[static_cast<std::size_t>(y) * width + x] = value;
    }
  }
  stretch(v, 20.0, 235.0);
  for (double& x : v) x += 1.5 * rng.normal();
  return quantize(width, height, v);
}

}  // namespace tclab::corpus
