#include "tclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tclab/error.hpp"

namespace tclab {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw StructureError("matrix product dimension mismatch");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data) s += v * v;
  return std::sqrt(s);
}

double orthonormality_error(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = i; j < m.rows; ++j) {
      auto ri = m.row(i);
      auto rj = m.row(j);
      const double dot = std::inner_product(ri.begin(), ri.end(), rj.begin(), 0.0);
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

namespace {

struct Rotation {
  std::size_t p, q;
  double c, s;
};

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Rotation that annihilates a_pq (Rutishauser's stable form).
Rotation make_rotation(const Matrix& a, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {p, q, c, t * c};
}

// Pairs for one round of the circle-method tournament over m (even) slots.
void round_pairs(std::size_t m, std::size_t round, std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.clear();
  const std::size_t n = m - 1;
  out.emplace_back(round, n);
  for (std::size_t k = 1; k < m / 2; ++k) {
    std::size_t p = (round + k) % n;
    std::size_t q = (round + n - k) % n;
    out.emplace_back(std::min(p, q), std::max(p, q));
  }
}

void apply_round(Matrix& a, const std::vector<Rotation>& rots, bool parallel) {
  const std::size_t d = a.rows;
  const long nr = static_cast<long>(rots.size());

  // A <- J^T A : mixes row pairs. The same rotations reach V later, per sweep.
#pragma omp parallel for schedule(static) if (parallel)
  for (long r = 0; r < nr; ++r) {
    const Rotation& rot = rots[static_cast<std::size_t>(r)];
    double* rp = a.row(rot.p).data();
    double* rq = a.row(rot.q).data();
    for (std::size_t k = 0; k < d; ++k) {
      const double x = rp[k], y = rq[k];
      rp[k] = rot.c * x - rot.s * y;
      rq[k] = rot.s * x + rot.c * y;
    }
  }

  // A <- A J : mixes column pairs within every row, four rows per rotation load.
  const long blocks = static_cast<long>((d + 3) / 4);
#pragma omp parallel for schedule(static) if (parallel)
  for (long b = 0; b < blocks; ++b) {
    const std::size_t first = static_cast<std::size_t>(b) * 4;
    const std::size_t last = std::min(d, first + 4);
    if (last - first == 4) {
      double* r0 = a.row(first).data();
      double* r1 = r0 + d;
      double* r2 = r1 + d;
      double* r3 = r2 + d;
      for (const Rotation& rot : rots) {
        const std::size_t p = rot.p, q = rot.q;
        const double c = rot.c, s = rot.s;
        const double x0 = r0[p], y0 = r0[q], x1 = r1[p], y1 = r1[q];
        const double x2 = r2[p], y2 = r2[q], x3 = r3[p], y3 = r3[q];
        r0[p] = c * x0 - s * y0;
        r0[q] = s * x0 + c * y0;
        r1[p] = c * x1 - s * y1;
        r1[q] = s * x1 + c * y1;
        r2[p] = c * x2 - s * y2;
        r2[q] = s * x2 + c * y2;
        r3[p] = c * x3 - s * y3;
        r3[q] = s * x3 + c * y3;
      }
    } else {
      for (std::size_t i = first; i < last; ++i) {
        double* row = a.row(i).data();
        for (const Rotation& rot : rots) {
          const double x = row[rot.p], y = row[rot.q];
          row[rot.p] = rot.c * x - rot.s * y;
          row[rot.q] = rot.s * x + rot.c * y;
        }
      }
    }
  }

  for (const Rotation& rot : rots) {
    a(rot.p, rot.q) = 0.0;
    a(rot.q, rot.p) = 0.0;
  }
}

// V <- J^T V for every rotation of a sweep, in order. Rows only mix within
// a column, so column tiles are independent and stay in cache.
void apply_to_vectors(Matrix& vectors, const std::vector<Rotation>& rots, bool parallel) {
  constexpr std::size_t kTile = 64;
  const std::size_t d = vectors.cols;
  const long tiles = static_cast<long>((d + kTile - 1) / kTile);
#pragma omp parallel for schedule(static) if (parallel)
  for (long t = 0; t < tiles; ++t) {
    const std::size_t lo = static_cast<std::size_t>(t) * kTile;
    const std::size_t hi = std::min(d, lo + kTile);
    for (const Rotation& rot : rots) {
      double* vp = vectors.row(rot.p).data();
      double* vq = vectors.row(rot.q).data();
      for (std::size_t k = lo; k < hi; ++k) {
        const double x = vp[k], y = vq[k];
        vp[k] = rot.c * x - rot.s * y;
        vq[k] = rot.s * x + rot.c * y;
      }
    }
  }
}

}  // namespace

EigenDecomposition jacobi_eigh(const Matrix& input, const JacobiOptions& options) {
  const std::size_t d = input.rows;
  if (d == 0 || input.cols != d) throw StructureError("jacobi_eigh needs a non-empty square matrix");

  double max_abs = 0.0;
  for (double v : input.data) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (!(std::abs(input(i, j) - input(j, i)) <= options.symmetry_tol * (1.0 + max_abs)))
        throw SymmetryError("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");

  Matrix a = input;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) a(i, j) = a(j, i) = 0.5 * (input(i, j) + input(j, i));

  Matrix vectors = Matrix::identity(d);
  const double target = options.rel_tol * frobenius_norm(a);
  // Elements below this are left alone: if all are, off-norm <= target.
  const double skip_below = target / static_cast<double>(d);
  const bool parallel = options.exec == Exec::Parallel;

  const std::size_t slots = d + (d % 2);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Rotation> rots;
  std::vector<Rotation> sweep_rots;
  rots.reserve(slots / 2);

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweep == options.max_sweeps)
      throw ConvergenceError("jacobi_eigh: no convergence after " + std::to_string(sweep) +
                                 " sweeps, off-diagonal norm " + std::to_string(off),
                             off);
    // Threshold sweeps: small elements wait until the large ones are gone.
    const double threshold = std::max(skip_below, 0.2 * off / static_cast<double>(d));
    for (std::size_t round = 0; round + 1 < slots; ++round) {
      round_pairs(slots, round, pairs);
      rots.clear();
      for (auto [p, q] : pairs) {
        if (q >= d) continue;  // bye slot when d is odd
        if (std::abs(a(p, q)) <= threshold) continue;
        rots.push_back(make_rotation(a, p, q));
      }
      if (!rots.empty()) apply_round(a, rots, parallel);
      sweep_rots.insert(sweep_rots.end(), rots.begin(), rots.end());
    }
    apply_to_vectors(vectors, sweep_rots, parallel);
    sweep_rots.clear();
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.resize(d);
  out.vectors = Matrix(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    out.values[r] = a(order[r], order[r]);
    auto src = vectors.row(order[r]);
    std::copy(src.begin(), src.end(), out.vectors.row(r).begin());
  }
  out.sweeps = sweep;
  out.off_norm = off;
  return out;
}

double eigen_residual(const Matrix& a, const EigenDecomposition& eig) {
  const std::size_t d = a.rows;
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    auto v = eig.vectors.row(i);
    for (std::size_t r = 0; r < d; ++r) {
      auto arow = a.row(r);
      const double av = std::inner_product(arow.begin(), arow.end(), v.begin(), 0.0);
      worst = std::max(worst, std::abs(av - eig.values[i] * v[r]));
    }
  }
  return worst;
}

}  // namespace tclab
