#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tclab/image.hpp"
#include "tclab/linalg.hpp"
#include "tclab/parallel.hpp"

namespace tclab {

enum class TransformKind { DCT, Hadamard, PCA };

// "DCT", "Hadamard", "PCA"
std::string_view to_string(TransformKind kind);
// Accepts any letter case: dct, hadamard, pca.
std::optional<TransformKind> parse_transform_kind(std::string_view text);

// Orthonormal d x d basis (d = N*N) whose rows are the basis vectors.
//
// DCT and Hadamard bases are separable: matrix = factor (x) factor, where
// factor is the N x N one-dimensional basis, and forward/inverse apply the
// factor along each axis instead of the full product. PCA carries the
// training mean and eigenvalues.
struct TransformBasis {
  TransformKind kind = TransformKind::DCT;
  int block_size = 0;
  Matrix matrix;
  Matrix factor;                     // N x N; empty for PCA
  std::vector<double> mean;          // d entries, zero for DCT/Hadamard
  std::vector<double> eigenvalues;   // PCA only, descending

  std::size_t dim() const { return matrix.rows; }
  bool separable() const { return factor.rows != 0; }
};

TransformBasis build_dct_basis(int block_size);
// Throws UnsupportedSizeError unless block_size is a power of two.
TransformBasis build_hadamard_basis(int block_size);

bool is_power_of_two(int n);

// Running sums for the population covariance C = (1/M) sum (x - mu)(x - mu)^T.
class CovarianceAccumulator {
 public:
  explicit CovarianceAccumulator(std::size_t dim);

  void add(std::span<const double> block);
  // Adds another accumulator's sums; associative and commutative up to
  // floating-point rounding.
  void merge(const CovarianceAccumulator& other);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return count_; }
  std::span<const double> sum() const { return sum_; }
  // Upper triangle is authoritative; the lower triangle is filled on finalize.
  const Matrix& outer_sum() const { return outer_; }

  std::vector<double> mean() const;
  // outer_sum / M - mu mu^T. Throws EmptyTrainingSetError when M = 0.
  Matrix covariance() const;

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<double> sum_;
  Matrix outer_;
};

// Accumulates all blocks. The parallel path reduces fixed-size chunks of
// blocks and merges them in chunk order, so its result does not depend on the
// thread count. The serial path is a single running accumulator.
CovarianceAccumulator accumulate_blocks(const BlockSet& blocks, Exec exec = Exec::Parallel);

// Trains the KLT on every block of the set. Eigenvectors are sorted by
// eigenvalue (descending) and signed so the first entry with magnitude above
// 1e-12 is positive. An exactly-zero covariance yields the identity basis.
TransformBasis train_pca_basis(const BlockSet& blocks, Exec exec = Exec::Parallel);

// DCT/Hadamard build directly; PCA trains on blocks.
TransformBasis make_basis(TransformKind kind, const BlockSet& blocks, Exec exec = Exec::Parallel);

// coefficients = B (block - mean). Separable kinds use two 1D passes.
void forward(const TransformBasis& basis, std::span<const double> block, std::span<double> coefficients);
std::vector<double> forward(const TransformBasis& basis, std::span<const double> block);

// block = B^T coefficients + mean.
void inverse(const TransformBasis& basis, std::span<const double> coefficients, std::span<double> block);
std::vector<double> inverse(const TransformBasis& basis, std::span<const double> coefficients);

// Full d x d matrix-vector product, ignoring separability.
std::vector<double> forward_direct(const TransformBasis& basis, std::span<const double> block);

// Text dump: "kind N d", then one row per line, %.17g, space-separated.
void write_basis(std::ostream& out, const TransformBasis& basis);

}  // namespace tclab
