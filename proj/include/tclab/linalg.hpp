#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tclab/parallel.hpp"

namespace tclab {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& m);
// max_ij |M M^T - I|
double orthonormality_error(const Matrix& m);

struct JacobiOptions {
  double rel_tol = 1e-12;   // stop when off-diagonal Frobenius norm <= rel_tol * ||A||_F
  int max_sweeps = 100;
  double symmetry_tol = 1e-9;
  Exec exec = Exec::Parallel;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // row i is the unit eigenvector for values[i]
  int sweeps = 0;
  double off_norm = 0.0;  // off-diagonal Frobenius norm at exit
};

// Cyclic Jacobi with round-robin (tournament) pair ordering: each sweep
// visits every index pair once, in rounds of disjoint pairs whose rotations
// commute. Rounds are applied as a row pass then a column pass, so the
// serial and OpenMP paths yield bit-identical results.
//
// Throws SymmetryError when |a_ij - a_ji| > symmetry_tol * (1 + max|a|),
// ConvergenceError when max_sweeps is reached.
EigenDecomposition jacobi_eigh(const Matrix& a, const JacobiOptions& options = {});

// max_i ||A v_i - lambda_i v_i||_inf
double eigen_residual(const Matrix& a, const EigenDecomposition& eig);

}  // namespace tclab
