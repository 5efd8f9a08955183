#include "tclab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tclab/coding.hpp"
#include "tclab/error.hpp"

namespace tclab {

double mse(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw StructureError("mse: image dimensions differ");
  auto x = a.data();
  auto y = b.data();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = x[i] - y[i];
    s += e * e;
  }
  const double m = s / static_cast<double>(x.size());
  return m <= kLosslessMse ? 0.0 : m;
}

double psnr(double mse_value) {
  if (std::isnan(mse_value) || mse_value < 0.0) throw RangeError("psnr: mse must be non-negative");
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

EnergyCurve energy_curve(std::span<const double> coefficients) {
  const std::size_t d = coefficients.size();
  if (d == 0) throw RangeError("energy_curve needs at least one coefficient");
  std::vector<double> energy(d);
  std::transform(coefficients.begin(), coefficients.end(), energy.begin(), [](double c) { return c * c; });
  std::stable_sort(energy.begin(), energy.end(), std::greater<>());

  EnergyCurve curve;
  curve.values.assign(d, 0.0);
  const double total = std::accumulate(energy.begin(), energy.end(), 0.0);
  if (total == 0.0) return curve;
  double running = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    running += energy[i];
    curve.values[i] = running / total;
  }
  return curve;
}

EnergyCurve image_energy_curve(const BlockSet& blocks, const TransformBasis& basis, Exec exec) {
  const std::size_t d = blocks.dim();
  const std::size_t count = blocks.count();
  if (basis.dim() != d) throw StructureError("basis dimension does not match block size");
  if (count == 0) throw EmptyTrainingSetError("energy curve of an empty block set");

  std::vector<double> mean(d, 0.0);
  for (std::size_t b = 0; b < count; ++b) {
    auto block = blocks.block(b);
    for (std::size_t i = 0; i < d; ++i) mean[i] += block[i];
  }
  for (double& v : mean) v /= static_cast<double>(count);

  // PCA's forward already subtracts its training mean.
  const bool center = basis.kind != TransformKind::PCA;
  std::vector<double> per_block(count * d);

#pragma omp parallel if (exec == Exec::Parallel)
  {
    std::vector<double> centered(d);
    std::vector<double> coefficients(d);
#pragma omp for schedule(static)
    for (long b = 0; b < static_cast<long>(count); ++b) {
      auto block = blocks.block(static_cast<std::size_t>(b));
      if (center) {
        for (std::size_t i = 0; i < d; ++i) centered[i] = block[i] - mean[i];
        forward(basis, centered, coefficients);
      } else {
        forward(basis, block, coefficients);
      }
      const EnergyCurve curve = energy_curve(coefficients);
      std::copy(curve.values.begin(), curve.values.end(), per_block.begin() + static_cast<std::ptrdiff_t>(b * d));
    }
  }

  EnergyCurve out;
  out.values.assign(d, 0.0);
  for (std::size_t b = 0; b < count; ++b)
    for (std::size_t i = 0; i < d; ++i) out.values[i] += per_block[b * d + i];
  for (double& v : out.values) v /= static_cast<double>(count);
  return out;
}

EnergyCurve image_energy_curve(const GrayImage& image, TransformKind kind, int block_size, Exec exec) {
  if (kind == TransformKind::Hadamard && !is_power_of_two(block_size))
    throw UnsupportedSizeError("Hadamard transform needs a power-of-two block size, got " + std::to_string(block_size));
  const BlockSet blocks = tile(image, block_size);
  return image_energy_curve(blocks, make_basis(kind, blocks, exec), exec);
}

}  // namespace tclab
