// Serial reference vs OpenMP path for the hot kernels. Second argument of
// each benchmark: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <string>

#include "tclab/coding.hpp"
#include "tclab/image.hpp"
#include "tclab/linalg.hpp"
#include "tclab/metrics.hpp"
#include "tclab/parallel.hpp"
#include "tclab/transforms.hpp"

using namespace tclab;

namespace {

const GrayImage& texture() {
  static const GrayImage img = load_pgm_file(std::string(TCLAB_CORPUS_DIR) + "/texture.pgm");
  return img;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_Jacobi(benchmark::State& state) {
  const Matrix c = accumulate_blocks(tile(texture(), static_cast<int>(state.range(0)))).covariance();
  JacobiOptions options;
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigh(c, options));
}
BENCHMARK(BM_Jacobi)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Covariance(benchmark::State& state) {
  const BlockSet blocks = tile(texture(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_blocks(blocks, exec_of(state)).covariance());
}
BENCHMARK(BM_Covariance)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CodeBlocks(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlockSet blocks = tile(texture(), n);
  const TransformBasis basis = train_pca_basis(blocks);
  const auto k = static_cast<std::size_t>(k_from_fraction(0.2, n));
  for (auto _ : state) benchmark::DoNotOptimize(code_blocks(blocks, basis, k, exec_of(state)));
}
BENCHMARK(BM_CodeBlocks)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_EnergyCurve(benchmark::State& state) {
  const BlockSet blocks = tile(texture(), static_cast<int>(state.range(0)));
  const TransformBasis basis = build_dct_basis(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(image_energy_curve(blocks, basis, exec_of(state)));
}
BENCHMARK(BM_EnergyCurve)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
