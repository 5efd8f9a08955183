#include "tclab/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tclab/error.hpp"

namespace tclab {

RatePoint RatePoint::make(int k, int d) {
  if (d < 1 || k < 1 || k > d) throw RangeError("rate point needs 1 <= k <= d");
  return {k, d, static_cast<double>(k) / static_cast<double>(d)};
}

int k_from_fraction(double fraction, int block_size) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw RangeError("fraction must lie in (0, 1]");
  if (block_size < 1) throw RangeError("block size must be >= 1");
  const long long d = static_cast<long long>(block_size) * block_size;
  const long long k = static_cast<long long>(std::floor(fraction * static_cast<double>(d) + 0.5));
  return static_cast<int>(std::clamp<long long>(k, 1, d));
}

namespace {

// Orders indices by descending magnitude, ascending index on ties.
struct MagnitudeOrder {
  std::span<const double> c;
  bool operator()(std::size_t a, std::size_t b) const {
    const double ma = std::abs(c[a]), mb = std::abs(c[b]);
    return ma != mb ? ma > mb : a < b;
  }
};

void select_top_k(std::span<const double> coefficients, std::size_t k, std::vector<std::size_t>& order) {
  order.resize(coefficients.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    MagnitudeOrder{coefficients});
}

}  // namespace

CodedBlock retain_top_k(std::span<const double> coefficients, std::size_t k) {
  const std::size_t d = coefficients.size();
  if (k < 1 || k > d) throw RangeError("retain_top_k needs 1 <= k <= d");
  std::vector<std::size_t> order;
  select_top_k(coefficients, k, order);
  CodedBlock coded;
  coded.k = k;
  coded.d = d;
  coded.kept.reserve(k);
  for (std::size_t i = 0; i < k; ++i) coded.kept.push_back({order[i], coefficients[order[i]]});
  return coded;
}

std::vector<double> reconstruct_block(const TransformBasis& basis, const CodedBlock& coded) {
  const std::size_t d = basis.dim();
  if (coded.d != d) throw StructureError("coded block dimension does not match basis");
  std::vector<double> coefficients(d, 0.0);
  for (const auto& c : coded.kept) {
    if (c.index >= d) throw StructureError("coded coefficient index out of range");
    coefficients[c.index] = c.value;
  }
  return inverse(basis, coefficients);
}

BlockSet code_blocks(const BlockSet& blocks, const TransformBasis& basis, std::size_t k, Exec exec) {
  const std::size_t d = blocks.dim();
  if (basis.dim() != d) throw StructureError("basis dimension does not match block size");
  if (k < 1 || k > d) throw RangeError("code_blocks needs 1 <= k <= d");

  BlockSet out = blocks;
  const long count = static_cast<long>(blocks.count());

#pragma omp parallel if (exec == Exec::Parallel)
  {
    std::vector<double> coefficients(d);
    std::vector<double> kept(d);
    std::vector<std::size_t> order;
#pragma omp for schedule(static)
    for (long b = 0; b < count; ++b) {
      const auto idx = static_cast<std::size_t>(b);
      forward(basis, blocks.block(idx), coefficients);
      select_top_k(coefficients, k, order);
      std::fill(kept.begin(), kept.end(), 0.0);
      for (std::size_t i = 0; i < k; ++i) kept[order[i]] = coefficients[order[i]];
      inverse(basis, kept, out.block(idx));
    }
  }
  return out;
}

CompressResult compress_with_basis(const GrayImage& image, const TransformBasis& basis, double fraction, Exec exec) {
  const int n = basis.block_size;
  const int k = k_from_fraction(fraction, n);
  const BlockSet blocks = tile(image, n);
  Raster unclamped = untile(code_blocks(blocks, basis, static_cast<std::size_t>(k), exec));
  GrayImage reconstruction = GrayImage::clamped(unclamped);
  return {std::move(reconstruction), std::move(unclamped), RatePoint::make(k, n * n)};
}

CompressResult compress_image(const GrayImage& image, TransformKind kind, int block_size, double fraction,
                              Exec exec) {
  if (kind == TransformKind::Hadamard && !is_power_of_two(block_size))
    throw UnsupportedSizeError("Hadamard transform needs a power-of-two block size, got " + std::to_string(block_size));
  k_from_fraction(fraction, block_size);  // validate before training
  const BlockSet blocks = tile(image, block_size);
  const TransformBasis basis = make_basis(kind, blocks, exec);
  return compress_with_basis(image, basis, fraction, exec);
}

}  // namespace tclab
