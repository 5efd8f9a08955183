#pragma once

#include <span>
#include <vector>

#include "tclab/image.hpp"
#include "tclab/parallel.hpp"
#include "tclab/transforms.hpp"

namespace tclab {

// Mean squared errors at or below this are reported as exactly zero. An RMS
// error of 1e-6 intensity levels is transform and eigensolver round-off, six
// orders below the 8-bit quantization step.
inline constexpr double kLosslessMse = 1e-12;

// Mean squared pixel difference. Throws StructureError on size mismatch.
double mse(const GrayImage& a, const GrayImage& b);

// 10 log10(255^2 / mse); +infinity when mse == 0. Throws RangeError when
// mse < 0.
double psnr(double mse_value);

// Cumulative energy fraction captured by the top-k magnitudes, k = 1..d.
struct EnergyCurve {
  std::vector<double> values;

  std::size_t d() const { return values.size(); }
  // E(k), 1-based.
  double at(std::size_t k) const { return values[k - 1]; }
};

// An all-zero input yields an all-zero curve.
EnergyCurve energy_curve(std::span<const double> coefficients);

// Unweighted mean of per-block curves. Every transform sees the blocks
// centred by the image's mean block (the PCA training mean), so DCT,
// Hadamard and PCA compact the same signal.
EnergyCurve image_energy_curve(const BlockSet& blocks, const TransformBasis& basis, Exec exec = Exec::Parallel);
EnergyCurve image_energy_curve(const GrayImage& image, TransformKind kind, int block_size,
                               Exec exec = Exec::Parallel);

}  // namespace tclab
