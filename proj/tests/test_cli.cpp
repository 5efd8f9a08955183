// Drives the tclab binary end to end: flags, exit codes, stdout and files.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tclab/corpus.hpp"
#include "tclab/image.hpp"
#include "tclab/sweep.hpp"
#include "test_support.hpp"

using namespace tclab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tclab_cli_" + std::to_string(std::random_device{}()));
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

struct Run {
  int status;
  std::string out;
};

Run run(const TempDir& dir, const std::string& args) {
  const std::string out = dir.file("stdout.txt");
  const std::string cmd = std::string(TCLAB_CLI) + " " + args + " > " + out + " 2> " + dir.file("stderr.txt");
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out)};
}

}  // namespace

TEST_CASE("compress writes a PGM and prints the rate line") {
  TempDir dir;
  write_pgm_file(corpus::texture(64, 64, 2), dir.file("in.pgm"));
  const auto r = run(dir, "compress --input " + dir.file("in.pgm") +
                              " --transform dct --block-size 8 --fraction 0.1 --output " + dir.file("out.pgm"));
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("k=6 rate=0.09375 mse="));
  CHECK(r.out.find(" psnr_db=") != std::string::npos);
  const GrayImage back = load_pgm_file(dir.file("out.pgm"));
  CHECK(back.width() == 64);

  const auto full = run(dir, "compress --input " + dir.file("in.pgm") +
                                 " --transform pca --block-size 4 --fraction 1.0 --output " + dir.file("full.pgm"));
  CHECK(full.status == 0);
  CHECK(full.out.find("psnr_db=inf") != std::string::npos);
  CHECK(slurp(dir.file("full.pgm")) == slurp(dir.file("in.pgm")));
}

TEST_CASE("compress on a constant image is lossless for every transform") {
  TempDir dir;
  write_pgm_file(testing::constant_image(40, 24, 77.0), dir.file("flat.pgm"));
  for (const char* t : {"dct", "hadamard", "pca"}) {
    const auto r = run(dir, "compress --input " + dir.file("flat.pgm") + " --transform " + t +
                                " --block-size 8 --fraction 0.05 --output " + dir.file("o.pgm"));
    CHECK(r.status == 0);
    CHECK(r.out.find("psnr_db=inf") != std::string::npos);
  }
}

TEST_CASE("compress flag validation exits 2") {
  TempDir dir;
  write_pgm_file(testing::constant_image(16, 16, 1.0), dir.file("in.pgm"));
  const std::string base = "compress --input " + dir.file("in.pgm") + " --output " + dir.file("o.pgm");
  CHECK(run(dir, base + " --transform hadamard --block-size 12 --fraction 0.5").status == 2);
  CHECK(slurp(dir.file("stderr.txt")).find("unsupported size") != std::string::npos);
  CHECK(run(dir, base + " --transform wavelet --block-size 8 --fraction 0.5").status == 2);
  CHECK(run(dir, base + " --transform dct --block-size 8 --fraction 1.5").status == 2);
  CHECK(run(dir, base + " --transform dct --block-size 8").status == 2);
  CHECK(run(dir, "").status == 2);
  // pipeline error: unreadable input
  CHECK(run(dir, "compress --input " + dir.file("nope.pgm") +
                     " --output x.pgm --transform dct --block-size 8 --fraction 0.5")
            .status == 1);
}

TEST_CASE("basis-dump") {
  TempDir dir;
  const auto one = run(dir, "basis-dump --transform dct --block-size 1");
  CHECK(one.status == 0);
  CHECK(one.out == "DCT 1 1\n1\n");

  const auto had = run(dir, "basis-dump --transform hadamard --block-size 2");
  CHECK(had.status == 0);
  std::istringstream in(had.out);
  std::string kind;
  int n, d;
  in >> kind >> n >> d;
  CHECK(kind == "Hadamard");
  for (int i = 0; i < 16; ++i) {
    double v;
    in >> v;
    CHECK(std::abs(v) == 0.5);
  }

  CHECK(run(dir, "basis-dump --transform pca --block-size 4").status == 2);

  write_pgm_file(testing::constant_image(8, 8, 50.0), dir.file("flat.pgm"));
  const auto pca = run(dir, "basis-dump --transform pca --block-size 2 --input " + dir.file("flat.pgm"));
  CHECK(pca.status == 0);
  CHECK(pca.out == "PCA 2 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
}

TEST_CASE("energy subcommand") {
  TempDir dir;
  write_pgm_file(corpus::texture(32, 32, 8), dir.file("t.pgm"));
  const auto r = run(dir, "energy --input " + dir.file("t.pgm") + " --transform dct --block-size 4");
  CHECK(r.status == 0);
  std::istringstream in(r.out);
  const auto rows = read_energy_csv(in);
  REQUIRE(rows.size() == 16);
  CHECK(rows.back().energy_fraction == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rows.front().image == "t");
}

TEST_CASE("sweep with a config file and failure isolation") {
  TempDir dir;
  write_pgm_file(corpus::gradient_edges(32, 32, 1), dir.file("g.pgm"));
  {
    std::ofstream cfg(dir.file("s.cfg"));
    cfg << "images=g.pgm,missing.pgm\nblock_sizes=8\noutput=res.csv\nemit_energy=true\n";
  }
  const auto r = run(dir, "sweep --config " + dir.file("s.cfg"));
  CHECK(r.status == 1);
  std::istringstream in(slurp(dir.file("res.csv")));
  const auto rows = read_csv(in);
  CHECK(rows.size() == 21);
  CHECK(fs::exists(dir.file("res_energy.csv")));

  {
    std::ofstream bad(dir.file("bad.cfg"));
    bad << "block_sizes=eight\n";
  }
  CHECK(run(dir, "sweep --config " + dir.file("bad.cfg")).status == 2);
  CHECK(run(dir, "sweep --config " + dir.file("absent.cfg")).status == 2);
}

TEST_CASE("sweep inline flags are deterministic") {
  TempDir dir;
  write_pgm_file(corpus::texture(48, 48, 4), dir.file("t.pgm"));
  const std::string flags = "sweep --images " + dir.file("t.pgm") + " --block-sizes 4,8 --fractions 0.1,1.0 --threads 1";
  CHECK(run(dir, flags + " --out " + dir.file("a.csv")).status == 0);
  CHECK(run(dir, flags + " --out " + dir.file("b.csv")).status == 0);
  const std::string a = slurp(dir.file("a.csv"));
  CHECK(a == slurp(dir.file("b.csv")));
  std::istringstream in(a);
  CHECK(read_csv(in).size() == 3 * 2 * 2);
}
