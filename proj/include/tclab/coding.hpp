#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tclab/image.hpp"
#include "tclab/parallel.hpp"
#include "tclab/transforms.hpp"

namespace tclab {

struct RatePoint {
  int k = 0;
  int d = 0;
  double rate = 0.0;  // k / d

  static RatePoint make(int k, int d);
};

// k = max(1, floor(f * N^2 + 0.5)), capped at N^2.
// Throws RangeError unless 0 < f <= 1 and N >= 1.
int k_from_fraction(double fraction, int block_size);

struct CodedCoefficient {
  std::size_t index;
  double value;
  friend bool operator==(const CodedCoefficient&, const CodedCoefficient&) = default;
};

// Retained coefficients of one block, largest magnitude first.
struct CodedBlock {
  std::vector<CodedCoefficient> kept;
  std::size_t k = 0;
  std::size_t d = 0;
};

// Keeps the k largest-magnitude coefficients; equal magnitudes go to the
// lower index. Throws RangeError unless 1 <= k <= d.
CodedBlock retain_top_k(std::span<const double> coefficients, std::size_t k);

// Scatters kept values into a zero vector and inverts. No clamping.
std::vector<double> reconstruct_block(const TransformBasis& basis, const CodedBlock& coded);

struct CompressResult {
  GrayImage reconstruction;  // clamped to [0, 255]
  Raster unclamped;
  RatePoint rate;
};

// Forward, top-k, inverse on every block with an already-built basis. The
// parallel path distributes blocks across threads; block outputs are
// independent so both paths give identical results.
BlockSet code_blocks(const BlockSet& blocks, const TransformBasis& basis, std::size_t k, Exec exec = Exec::Parallel);

CompressResult compress_with_basis(const GrayImage& image, const TransformBasis& basis, double fraction,
                                   Exec exec = Exec::Parallel);

// Tiles, builds or trains the basis on this image, codes every block at
// k = k_from_fraction(fraction, N), untiles and clamps.
CompressResult compress_image(const GrayImage& image, TransformKind kind, int block_size, double fraction,
                              Exec exec = Exec::Parallel);

}  // namespace tclab
