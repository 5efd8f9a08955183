#include "tclab/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "tclab/error.hpp"

namespace tclab {

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::DCT: return "DCT";
    case TransformKind::Hadamard: return "Hadamard";
    case TransformKind::PCA: return "PCA";
  }
  return "?";
}

std::optional<TransformKind> parse_transform_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "dct") return TransformKind::DCT;
  if (lower == "hadamard") return TransformKind::Hadamard;
  if (lower == "pca") return TransformKind::PCA;
  return std::nullopt;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

// Full 2D basis from a 1D factor: row (u,v), column (x,y).
Matrix kronecker_square(const Matrix& f) {
  const std::size_t n = f.rows;
  Matrix m(n * n, n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) m(u * n + v, x * n + y) = f(u, x) * f(v, y);
  return m;
}

void check_dims(std::size_t expected, std::size_t a, std::size_t b, const char* what) {
  if (a != expected || b != expected) throw StructureError(std::string(what) + ": dimension mismatch");
}

std::vector<double>& scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

TransformBasis build_dct_basis(int block_size) {
  if (block_size < 1) throw RangeError("block size must be >= 1");
  const std::size_t n = static_cast<std::size_t>(block_size);
  TransformBasis basis;
  basis.kind = TransformKind::DCT;
  basis.block_size = block_size;
  basis.factor = Matrix(n, n);
  const double nd = static_cast<double>(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double alpha = u == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
    for (std::size_t x = 0; x < n; ++x) {
      basis.factor(u, x) = alpha * std::cos((2.0 * x + 1.0) * u * std::numbers::pi / (2.0 * nd));
    }
  }
  basis.matrix = kronecker_square(basis.factor);
  basis.mean.assign(n * n, 0.0);
  return basis;
}

TransformBasis build_hadamard_basis(int block_size) {
  if (!is_power_of_two(block_size))
    throw UnsupportedSizeError("Hadamard transform needs a power-of-two block size, got " + std::to_string(block_size));
  const std::size_t n = static_cast<std::size_t>(block_size);

  // Sylvester recursion on signs: H_2m = [[H_m, H_m], [H_m, -H_m]].
  std::vector<int> sign(n * n, 1);
  for (std::size_t m = 1; m < n; m *= 2) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const int h = sign[i * n + j];
        sign[i * n + j + m] = h;
        sign[(i + m) * n + j] = h;
        sign[(i + m) * n + j + m] = -h;
      }
    }
  }

  TransformBasis basis;
  basis.kind = TransformKind::Hadamard;
  basis.block_size = block_size;
  basis.factor = Matrix(n, n);
  const double scale1d = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n * n; ++i) basis.factor.data[i] = sign[i] * scale1d;

  // Entries are exactly +-1/N.
  const double scale2d = 1.0 / static_cast<double>(n);
  basis.matrix = Matrix(n * n, n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          basis.matrix(u * n + v, x * n + y) = sign[u * n + x] * sign[v * n + y] * scale2d;
  basis.mean.assign(n * n, 0.0);
  return basis;
}

CovarianceAccumulator::CovarianceAccumulator(std::size_t dim) : dim_(dim), sum_(dim, 0.0), outer_(dim, dim) {}

void CovarianceAccumulator::add(std::span<const double> block) {
  if (block.size() != dim_) throw StructureError("covariance accumulate: dimension mismatch");
  ++count_;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double xi = block[i];
    sum_[i] += xi;
    double* row = outer_.row(i).data();
    for (std::size_t j = i; j < dim_; ++j) row[j] += xi * block[j];
  }
}

void CovarianceAccumulator::merge(const CovarianceAccumulator& other) {
  if (other.dim_ != dim_) throw StructureError("covariance merge: dimension mismatch");
  count_ += other.count_;
  for (std::size_t i = 0; i < dim_; ++i) sum_[i] += other.sum_[i];
  for (std::size_t i = 0; i < outer_.data.size(); ++i) outer_.data[i] += other.outer_.data[i];
}

std::vector<double> CovarianceAccumulator::mean() const {
  if (count_ == 0) throw EmptyTrainingSetError("covariance of an empty training set");
  std::vector<double> mu(sum_);
  for (double& v : mu) v /= static_cast<double>(count_);
  return mu;
}

Matrix CovarianceAccumulator::covariance() const {
  const auto mu = mean();
  const double m = static_cast<double>(count_);
  Matrix c(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      const double v = outer_(i, j) / m - mu[i] * mu[j];
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

CovarianceAccumulator accumulate_blocks(const BlockSet& blocks, Exec exec) {
  const std::size_t total = blocks.count();
  CovarianceAccumulator acc(blocks.dim());
  if (exec == Exec::Serial) {
    for (std::size_t b = 0; b < total; ++b) acc.add(blocks.block(b));
    return acc;
  }

  // Chunking depends only on the block count, never on the thread count.
  constexpr std::size_t kBlocksPerChunk = 64;
  constexpr std::size_t kMaxChunks = 32;
  const std::size_t chunks = std::clamp<std::size_t>((total + kBlocksPerChunk - 1) / kBlocksPerChunk, 1, kMaxChunks);
  std::vector<CovarianceAccumulator> partial(chunks, CovarianceAccumulator(blocks.dim()));

#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < static_cast<long>(chunks); ++c) {
    const std::size_t begin = total * static_cast<std::size_t>(c) / chunks;
    const std::size_t end = total * (static_cast<std::size_t>(c) + 1) / chunks;
    for (std::size_t b = begin; b < end; ++b) partial[static_cast<std::size_t>(c)].add(blocks.block(b));
  }
  for (const auto& p : partial) acc.merge(p);
  return acc;
}

TransformBasis train_pca_basis(const BlockSet& blocks, Exec exec) {
  if (blocks.count() == 0) throw EmptyTrainingSetError("PCA training needs at least one block");
  const std::size_t d = blocks.dim();
  const CovarianceAccumulator acc = accumulate_blocks(blocks, exec);
  const Matrix cov = acc.covariance();

  TransformBasis basis;
  basis.kind = TransformKind::PCA;
  basis.block_size = blocks.block_size;
  basis.mean = acc.mean();

  const bool all_zero = std::all_of(cov.data.begin(), cov.data.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    basis.matrix = Matrix::identity(d);
    basis.eigenvalues.assign(d, 0.0);
    return basis;
  }

  JacobiOptions options;
  options.exec = exec;
  EigenDecomposition eig = jacobi_eigh(cov, options);

  for (std::size_t r = 0; r < d; ++r) {
    auto v = eig.vectors.row(r);
    auto lead = std::find_if(v.begin(), v.end(), [](double e) { return std::abs(e) > 1e-12; });
    if (lead != v.end() && *lead < 0.0) {
      for (double& e : v) e = -e;
    }
  }
  // The covariance is positive semidefinite; negative values are round-off.
  for (double& lambda : eig.values) lambda = std::max(lambda, 0.0);

  basis.matrix = std::move(eig.vectors);
  basis.eigenvalues = std::move(eig.values);
  return basis;
}

TransformBasis make_basis(TransformKind kind, const BlockSet& blocks, Exec exec) {
  switch (kind) {
    case TransformKind::DCT: return build_dct_basis(blocks.block_size);
    case TransformKind::Hadamard: return build_hadamard_basis(blocks.block_size);
    case TransformKind::PCA: return train_pca_basis(blocks, exec);
  }
  throw RangeError("unknown transform kind");
}

void forward(const TransformBasis& basis, std::span<const double> block, std::span<double> coefficients) {
  const std::size_t d = basis.dim();
  check_dims(d, block.size(), coefficients.size(), "forward");

  if (basis.separable()) {
    // coefficients = F X F^T, X the block as an N x N matrix.
    const std::size_t n = basis.factor.rows;
    const double* f = basis.factor.data.data();
    auto& tmp = scratch(d);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (std::size_t y = 0; y < n; ++y) s += block[x * n + y] * f[v * n + y];
        tmp[x * n + v] = s;
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (std::size_t x = 0; x < n; ++x) s += f[u * n + x] * tmp[x * n + v];
        coefficients[u * n + v] = s;
      }
    }
    return;
  }

  auto& centered = scratch(d);
  for (std::size_t i = 0; i < d; ++i) centered[i] = block[i] - basis.mean[i];
  for (std::size_t r = 0; r < d; ++r) {
    auto row = basis.matrix.row(r);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += row[i] * centered[i];
    coefficients[r] = s;
  }
}

std::vector<double> forward(const TransformBasis& basis, std::span<const double> block) {
  std::vector<double> out(basis.dim());
  forward(basis, block, out);
  return out;
}

void inverse(const TransformBasis& basis, std::span<const double> coefficients, std::span<double> block) {
  const std::size_t d = basis.dim();
  check_dims(d, coefficients.size(), block.size(), "inverse");

  if (basis.separable()) {
    // X = F^T Y F.
    const std::size_t n = basis.factor.rows;
    const double* f = basis.factor.data.data();
    auto& tmp = scratch(d);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t y = 0; y < n; ++y) {
        double s = 0.0;
        for (std::size_t v = 0; v < n; ++v) s += coefficients[u * n + v] * f[v * n + y];
        tmp[u * n + y] = s;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        double s = 0.0;
        for (std::size_t u = 0; u < n; ++u) s += f[u * n + x] * tmp[u * n + y];
        block[x * n + y] = s;
      }
    }
    return;
  }

  std::copy(basis.mean.begin(), basis.mean.end(), block.begin());
  for (std::size_t r = 0; r < d; ++r) {
    const double c = coefficients[r];
    if (c == 0.0) continue;
    auto row = basis.matrix.row(r);
    for (std::size_t i = 0; i < d; ++i) block[i] += c * row[i];
  }
}

std::vector<double> inverse(const TransformBasis& basis, std::span<const double> coefficients) {
  std::vector<double> out(basis.dim());
  inverse(basis, coefficients, out);
  return out;
}

std::vector<double> forward_direct(const TransformBasis& basis, std::span<const double> block) {
  const std::size_t d = basis.dim();
  if (block.size() != d) throw StructureError("forward_direct: dimension mismatch");
  std::vector<double> out(d, 0.0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < d; ++i) out[r] += basis.matrix(r, i) * (block[i] - basis.mean[i]);
  return out;
}

void write_basis(std::ostream& out, const TransformBasis& basis) {
  out << to_string(basis.kind) << ' ' << basis.block_size << ' ' << basis.dim() << '\n';
  char buf[32];
  for (std::size_t r = 0; r < basis.dim(); ++r) {
    auto row = basis.matrix.row(r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace tclab
