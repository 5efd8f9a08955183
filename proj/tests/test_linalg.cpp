#include <cmath>
#include <random>

#include "doctest.h"
#include "tclab/error.hpp"
#include "tclab/image.hpp"
#include "tclab/linalg.hpp"
#include "tclab/transforms.hpp"
#include "test_support.hpp"

using namespace tclab;

namespace {

Matrix random_symmetric(std::mt19937& rng, std::size_t d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) a(i, j) = a(j, i) = dist(rng);
  return a;
}

}  // namespace

TEST_CASE("jacobi 2x2") {
  Matrix a(2, 2);
  a(0, 0) = 2; a(0, 1) = 1;
  a(1, 0) = 1; a(1, 1) = 2;
  const auto eig = jacobi_eigh(a);
  // lambda^2 - 4 lambda + 3 = 0
  CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  const double h = std::sqrt(0.5);
  CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(h));
  CHECK(eig.vectors(0, 0) * eig.vectors(0, 1) == doctest::Approx(0.5));
  CHECK(eig.vectors(1, 0) * eig.vectors(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("jacobi identity and diagonal") {
  const auto id = jacobi_eigh(Matrix::identity(5));
  for (double v : id.values) CHECK(v == 1.0);
  CHECK(id.sweeps == 0);

  Matrix diag(3, 3);
  diag(0, 0) = 5; diag(1, 1) = 2; diag(2, 2) = 9;
  const auto eig = jacobi_eigh(diag);
  CHECK(eig.values == std::vector<double>{9, 5, 2});
  CHECK(eig.vectors(0, 2) == 1.0);
  CHECK(eig.vectors(1, 0) == 1.0);
  CHECK(eig.vectors(2, 1) == 1.0);
}

TEST_CASE("jacobi 1x1 and odd dimension") {
  Matrix one(1, 1);
  one(0, 0) = -4.0;
  CHECK(jacobi_eigh(one).values[0] == -4.0);

  std::mt19937 rng(11);
  const Matrix a = random_symmetric(rng, 7);
  const auto eig = jacobi_eigh(a);
  CHECK(eigen_residual(a, eig) <= 1e-8 * (1 + frobenius_norm(a)));
  CHECK(orthonormality_error(eig.vectors) <= 1e-9);
}

TEST_CASE("jacobi residual on random symmetric matrices up to d=64") {
  std::mt19937 rng(2024);
  for (std::size_t d : {2u, 3u, 8u, 17u, 32u, 64u}) {
    const Matrix a = random_symmetric(rng, d);
    const auto eig = jacobi_eigh(a);
    CHECK(eigen_residual(a, eig) <= 1e-8 * (1 + frobenius_norm(a)));
    CHECK(orthonormality_error(eig.vectors) <= 1e-9);
    CHECK(eig.off_norm <= 1e-12 * frobenius_norm(a));
    for (std::size_t i = 1; i < d; ++i) CHECK(eig.values[i - 1] >= eig.values[i]);
  }
}

TEST_CASE("jacobi preserves the trace") {
  std::mt19937 rng(5);
  const Matrix a = random_symmetric(rng, 20);
  const auto eig = jacobi_eigh(a);
  double trace = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < 20; ++i) trace += a(i, i);
  for (double v : eig.values) sum += v;
  CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
}

TEST_CASE("jacobi serial and parallel paths are bit-identical") {
  std::mt19937 rng(99);
  const Matrix a = random_symmetric(rng, 48);
  JacobiOptions serial;
  serial.exec = Exec::Serial;
  JacobiOptions parallel;
  parallel.exec = Exec::Parallel;
  const auto s = jacobi_eigh(a, serial);
  const auto p = jacobi_eigh(a, parallel);
  CHECK(s.values == p.values);
  CHECK(s.vectors == p.vectors);
  CHECK(s.sweeps == p.sweeps);
}

TEST_CASE("jacobi errors") {
  Matrix asym(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(jacobi_eigh(asym), SymmetryError);
  CHECK_THROWS_AS(jacobi_eigh(Matrix(2, 3)), StructureError);
  CHECK_THROWS_AS(jacobi_eigh(Matrix()), StructureError);

  std::mt19937 rng(3);
  JacobiOptions capped;
  capped.max_sweeps = 1;
  const Matrix a = random_symmetric(rng, 16);
  try {
    jacobi_eigh(a, capped);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 1e-12 * frobenius_norm(a));
  }
}

TEST_CASE("jacobi on a rank-deficient covariance") {
  // Fewer samples than dimensions: rank <= M - 1.
  std::mt19937 rng(8);
  CovarianceAccumulator acc(36);
  for (int i = 0; i < 10; ++i) acc.add(testing::random_values(rng, 36, 0.0, 255.0));
  const Matrix c = acc.covariance();
  const auto eig = jacobi_eigh(c);
  CHECK(eigen_residual(c, eig) <= 1e-8 * (1 + frobenius_norm(c)));
  for (std::size_t i = 9; i < 36; ++i) CHECK(std::abs(eig.values[i]) <= 1e-9 * frobenius_norm(c));
}
