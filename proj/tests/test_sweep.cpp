#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tclab/corpus.hpp"
#include "tclab/error.hpp"
#include "tclab/metrics.hpp"
#include "tclab/sweep.hpp"
#include "test_support.hpp"

using namespace tclab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tclab_sweep_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("default config matches the experimental grid") {
  const SweepConfig config;
  CHECK(config.block_sizes == std::vector<int>{4, 8, 16, 32});
  CHECK(config.fractions == std::vector<double>{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0});
  CHECK(config.transforms.size() == 3);
}

TEST_CASE("parse_sweep_config") {
  const auto c = parse_sweep_config(
      "# comment\n"
      "images = a.pgm, /abs/b.pgm\n"
      "block_sizes=8,16\n"
      "fractions=0.1, 0.5\n"
      "transforms=dct,PCA\n"
      "output=out.csv\n"
      "emit_energy=true\n"
      "threads=2\n",
      "/base");
  CHECK(c.image_paths == std::vector<std::string>{"/base/a.pgm", "/abs/b.pgm"});
  CHECK(c.block_sizes == std::vector<int>{8, 16});
  CHECK(c.fractions == std::vector<double>{0.1, 0.5});
  CHECK(c.transforms == std::vector<TransformKind>{TransformKind::DCT, TransformKind::PCA});
  CHECK(c.output_path == "/base/out.csv");
  CHECK(c.emit_energy);
  CHECK(c.threads == 2);
  CHECK(c.resolved_energy_path() == "/base/out_energy.csv");

  const auto partial = parse_sweep_config("block_sizes=8\n");
  CHECK(partial.fractions.size() == 7);

  CHECK_THROWS_AS(parse_sweep_config("colour=red\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("block_sizes=8,x\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("block_sizes=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("fractions=0\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("fractions=1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("transforms=wavelet\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config("emit_energy=maybe\n"), ConfigError);
}

TEST_CASE("csv write and read") {
  std::ostringstream empty;
  write_csv(empty, {});
  CHECK(empty.str() == "image,transform,block_size,fraction,k,rate,mse,psnr_db\n");

  const SweepRecord rec{"lena", TransformKind::Hadamard, 8, 0.05, 3, 3.0 / 64.0, 12.5, psnr(12.5)};
  std::ostringstream one;
  write_csv(one, {rec});
  const std::string text = one.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("lena,Hadamard,8,0.050000000000000003,3,0.046875,12.5,") != std::string::npos);

  std::ostringstream capped;
  write_csv(capped, {SweepRecord{"x", TransformKind::PCA, 4, 1.0, 16, 1.0, 0.0, psnr(0.0)}});
  CHECK(capped.str().ends_with(",0,inf\n"));

  CHECK_THROWS_AS(write_csv(one, {SweepRecord{"a,b", TransformKind::DCT, 4, 1.0, 16, 1.0, 0.0, 0.0}}), IoError);
}

TEST_CASE("csv round trip preserves every record") {
  std::mt19937 rng(6);
  std::vector<SweepRecord> records;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double m = i % 7 == 0 ? 0.0 : u(rng) * 100.0;
    records.push_back({"img" + std::to_string(i % 3), static_cast<TransformKind>(i % 3), 4 << (i % 4), u(rng),
                       1 + i, u(rng), m, psnr(m)});
  }
  std::stringstream buf;
  write_csv(buf, records);
  CHECK(read_csv(buf) == records);

  std::vector<EnergyRecord> energy{{"a", TransformKind::DCT, 4, 1, 0.123456789012345678},
                                   {"a", TransformKind::PCA, 4, 2, 1.0}};
  std::stringstream ebuf;
  write_energy_csv(ebuf, energy);
  CHECK(ebuf.str().starts_with("image,transform,block_size,k,energy_fraction\n"));
  CHECK(read_energy_csv(ebuf) == energy);

  std::istringstream bad("image,wrong\n");
  CHECK_THROWS_AS(read_csv(bad), FormatError);
}

TEST_CASE("run_sweep grid, order and lossless rows") {
  TempDir dir;
  write_pgm_file(corpus::texture(64, 48, 1), dir.file("tex.pgm"));
  SweepConfig config;
  config.image_paths = {dir.file("tex.pgm")};
  config.block_sizes = {4, 8};
  config.emit_energy = true;
  const auto result = run_sweep(config);
  REQUIRE(result.ok());
  CHECK(result.records.size() == 3 * 2 * 7);
  CHECK(result.energy.size() == 3 * (16 + 64));

  // (image, transform, N, f) order
  CHECK(result.records[0].transform == TransformKind::DCT);
  CHECK(result.records[0].block_size == 4);
  CHECK(result.records[7].block_size == 8);
  CHECK(result.records[14].transform == TransformKind::Hadamard);
  for (const auto& r : result.records) {
    CHECK(r.image == "tex");
    CHECK(r.rate == static_cast<double>(r.k) / (r.block_size * r.block_size));
    if (r.fraction == 1.0) CHECK(std::isinf(r.psnr_db));
    if (std::isinf(r.psnr_db)) {
      CHECK(r.mse == 0.0);
    } else {
      CHECK(r.psnr_db == doctest::Approx(10.0 * std::log10(65025.0 / r.mse)).epsilon(1e-12));
    }
  }
  // block_sizes=8 alone gives 21 rows per image
  config.block_sizes = {8};
  CHECK(run_sweep(config).records.size() == 21);
}

TEST_CASE("run_sweep isolates failures") {
  TempDir dir;
  write_pgm_file(testing::constant_image(16, 16, 9.0), dir.file("flat.pgm"));
  SweepConfig config;
  config.image_paths = {dir.file("missing.pgm"), dir.file("flat.pgm")};
  config.block_sizes = {4};
  std::ostringstream log;
  const auto result = run_sweep(config, &log);
  CHECK_FALSE(result.ok());
  CHECK(result.failures.size() == 1);
  CHECK(result.records.size() == 21);
  CHECK(log.str().find("FAIL") != std::string::npos);
}

TEST_CASE("run_sweep skips unsupported Hadamard sizes") {
  TempDir dir;
  write_pgm_file(corpus::gradient_edges(24, 24, 2), dir.file("g.pgm"));
  SweepConfig config;
  config.image_paths = {dir.file("g.pgm")};
  config.block_sizes = {6};
  config.fractions = {0.5, 1.0};
  const auto result = run_sweep(config);
  CHECK(result.ok());
  CHECK(result.skipped == 2);
  CHECK(result.records.size() == 4);
}

TEST_CASE("sweep CSV is byte-identical across runs") {
  TempDir dir;
  write_pgm_file(corpus::gradient_edges(64, 64, 5), dir.file("g.pgm"));
  SweepConfig config;
  config.image_paths = {dir.file("g.pgm")};
  config.block_sizes = {4, 16};
  write_csv_file(dir.file("a.csv"), run_sweep(config).records);
  write_csv_file(dir.file("b.csv"), run_sweep(config).records);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
}

TEST_CASE("csv write to an unwritable path fails") {
  CHECK_THROWS_AS(write_csv_file("/nonexistent-dir/x.csv", {}), IoError);
}
