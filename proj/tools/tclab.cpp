// tclab: block transform coding command-line tool.
//
//   tclab compress   --input in.pgm --transform dct --block-size 8 --fraction 0.1 --output out.pgm
//   tclab sweep      [--config sweep.cfg] [--out results.csv] [--threads n]
//   tclab basis-dump --transform hadamard --block-size 4 [--input in.pgm]
//   tclab energy     --input in.pgm --transform pca --block-size 16 [--out energy.csv]
//
// Exit status: 0 on success, 1 on pipeline errors, 2 on invalid flags.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tclab/coding.hpp"
#include "tclab/error.hpp"
#include "tclab/image.hpp"
#include "tclab/metrics.hpp"
#include "tclab/parallel.hpp"
#include "tclab/sweep.hpp"
#include "tclab/transforms.hpp"

#ifndef TCLAB_CORPUS_DIR
#define TCLAB_CORPUS_DIR "corpus"
#endif

namespace {

constexpr int kExitPipeline = 1;
constexpr int kExitUsage = 2;

// Flag validation failure.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tclab::TransformKind require_kind(const std::string& text) {
  auto kind = tclab::parse_transform_kind(text);
  if (!kind) throw UsageError("unknown transform '" + text + "' (expected dct, hadamard or pca)");
  return *kind;
}

void require_block_size(tclab::TransformKind kind, int n) {
  if (n < 1) throw UsageError("block size must be >= 1");
  if (kind == tclab::TransformKind::Hadamard && !tclab::is_power_of_two(n))
    throw UsageError("unsupported size: hadamard needs a power-of-two block size, got " + std::to_string(n));
}

std::vector<std::string> default_corpus() {
  std::vector<std::string> paths;
  const std::filesystem::path dir(TCLAB_CORPUS_DIR);
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.path().extension() == ".pgm") paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  return paths;
}

struct CompressArgs {
  std::string input, transform, output;
  int block_size = 0;
  double fraction = 0.0;
  int threads = 0;
};

int run_compress(const CompressArgs& args) {
  const auto kind = require_kind(args.transform);
  require_block_size(kind, args.block_size);
  if (!(args.fraction > 0.0 && args.fraction <= 1.0)) throw UsageError("fraction must lie in (0, 1]");
  if (args.threads > 0) tclab::set_threads(args.threads);

  const tclab::GrayImage image = tclab::load_pgm_file(args.input);
  const auto result = tclab::compress_image(image, kind, args.block_size, args.fraction);
  tclab::write_pgm_file(result.reconstruction, args.output);
  const double m = tclab::mse(image, result.reconstruction);
  std::cout << "k=" << result.rate.k << " rate=" << tclab::format_real(result.rate.rate)
            << " mse=" << tclab::format_real(m) << " psnr_db=" << tclab::format_real(tclab::psnr(m)) << '\n';
  return 0;
}

struct SweepArgs {
  std::string config, out, energy_out;
  std::vector<std::string> images, transforms;
  std::vector<int> block_sizes;
  std::vector<double> fractions;
  bool emit_energy = false;
  int threads = -1;
};

int run_sweep_cmd(const SweepArgs& args) {
  tclab::SweepConfig config;
  try {
    if (!args.config.empty()) {
      std::ifstream in(args.config);
      if (!in) throw UsageError("cannot read config " + args.config);
      std::stringstream text;
      text << in.rdbuf();
      config = tclab::parse_sweep_config(text.str(), std::filesystem::path(args.config).parent_path().string());
    }
    if (!args.images.empty()) config.image_paths = args.images;
    if (!args.block_sizes.empty()) config.block_sizes = args.block_sizes;
    if (!args.fractions.empty()) config.fractions = args.fractions;
    if (!args.transforms.empty()) {
      config.transforms.clear();
      for (const auto& t : args.transforms) config.transforms.push_back(require_kind(t));
    }
    if (!args.out.empty()) config.output_path = args.out;
    if (args.emit_energy) config.emit_energy = true;
    if (!args.energy_out.empty()) config.energy_output_path = args.energy_out;
    if (args.threads >= 0) config.threads = args.threads;
    if (config.image_paths.empty()) config.image_paths = default_corpus();
    if (config.image_paths.empty()) throw UsageError("no images given and no bundled corpus found");
    config.validate();
  } catch (const tclab::ConfigError& e) {
    throw UsageError(e.what());
  }

  const auto result = tclab::run_sweep(config, &std::cerr);
  tclab::write_csv_file(config.output_path, result.records);
  if (config.emit_energy) tclab::write_energy_csv_file(config.resolved_energy_path(), result.energy);
  std::cerr << result.records.size() << " rows written to " << config.output_path;
  if (!result.ok()) std::cerr << ", " << result.failures.size() << " failure(s)";
  std::cerr << '\n';
  return result.ok() ? 0 : kExitPipeline;
}

struct BasisArgs {
  std::string transform, input;
  int block_size = 0;
  int threads = 0;
};

int run_basis_dump(const BasisArgs& args) {
  const auto kind = require_kind(args.transform);
  require_block_size(kind, args.block_size);
  if (args.threads > 0) tclab::set_threads(args.threads);
  tclab::TransformBasis basis;
  if (kind == tclab::TransformKind::PCA) {
    if (args.input.empty()) throw UsageError("pca basis-dump needs --input");
    basis = tclab::train_pca_basis(tclab::tile(tclab::load_pgm_file(args.input), args.block_size));
  } else if (kind == tclab::TransformKind::DCT) {
    basis = tclab::build_dct_basis(args.block_size);
  } else {
    basis = tclab::build_hadamard_basis(args.block_size);
  }
  tclab::write_basis(std::cout, basis);
  return 0;
}

struct EnergyArgs {
  std::string input, transform, out;
  int block_size = 0;
  int threads = 0;
};

int run_energy(const EnergyArgs& args) {
  const auto kind = require_kind(args.transform);
  require_block_size(kind, args.block_size);
  if (args.threads > 0) tclab::set_threads(args.threads);
  const auto image = tclab::load_pgm_file(args.input);
  const auto curve = tclab::image_energy_curve(image, kind, args.block_size);
  std::vector<tclab::EnergyRecord> rows;
  const std::string id = tclab::image_id(args.input);
  for (std::size_t k = 1; k <= curve.d(); ++k) rows.push_back({id, kind, args.block_size, static_cast<int>(k), curve.at(k)});
  if (args.out.empty()) {
    tclab::write_energy_csv(std::cout, rows);
  } else {
    tclab::write_energy_csv_file(args.out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block transform coding laboratory: DCT, Walsh-Hadamard and per-image PCA"};
  app.require_subcommand(1);

  CompressArgs compress;
  auto* compress_cmd = app.add_subcommand("compress", "Compress and reconstruct one image");
  compress_cmd->add_option("--input", compress.input, "Input PGM")->required();
  compress_cmd->add_option("--transform", compress.transform, "dct | hadamard | pca")->required();
  compress_cmd->add_option("--block-size", compress.block_size, "Block size N")->required();
  compress_cmd->add_option("--fraction", compress.fraction, "Retained fraction f in (0, 1]")->required();
  compress_cmd->add_option("--output", compress.output, "Output PGM")->required();
  compress_cmd->add_option("--threads", compress.threads, "Worker threads (0 = all)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the images x transforms x sizes x fractions grid");
  sweep_cmd->add_option("--config", sweep.config, "key=value config file");
  sweep_cmd->add_option("--out", sweep.out, "Results CSV");
  sweep_cmd->add_option("--images", sweep.images, "Input PGMs (default: bundled corpus)")->delimiter(',');
  sweep_cmd->add_option("--block-sizes", sweep.block_sizes, "Block sizes")->delimiter(',');
  sweep_cmd->add_option("--fractions", sweep.fractions, "Coefficient fractions")->delimiter(',');
  sweep_cmd->add_option("--transforms", sweep.transforms, "Transforms")->delimiter(',');
  sweep_cmd->add_flag("--emit-energy", sweep.emit_energy, "Also write energy-compaction CSV");
  sweep_cmd->add_option("--energy-out", sweep.energy_out, "Energy CSV path");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all)");

  BasisArgs basis;
  auto* basis_cmd = app.add_subcommand("basis-dump", "Print a transform basis as text");
  basis_cmd->add_option("--transform", basis.transform, "dct | hadamard | pca")->required();
  basis_cmd->add_option("--block-size", basis.block_size, "Block size N")->required();
  basis_cmd->add_option("--input", basis.input, "Training image (pca only)");
  basis_cmd->add_option("--threads", basis.threads, "Worker threads (0 = all)");

  EnergyArgs energy;
  auto* energy_cmd = app.add_subcommand("energy", "Print the mean energy-compaction curve of an image");
  energy_cmd->add_option("--input", energy.input, "Input PGM")->required();
  energy_cmd->add_option("--transform", energy.transform, "dct | hadamard | pca")->required();
  energy_cmd->add_option("--block-size", energy.block_size, "Block size N")->required();
  energy_cmd->add_option("--out", energy.out, "Energy CSV (default: stdout)");
  energy_cmd->add_option("--threads", energy.threads, "Worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compress_cmd) return run_compress(compress);
    if (*sweep_cmd) return run_sweep_cmd(sweep);
    if (*basis_cmd) return run_basis_dump(basis);
    if (*energy_cmd) return run_energy(energy);
  } catch (const UsageError& e) {
    std::cerr << "tclab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "tclab: " << e.what() << '\n';
    return kExitPipeline;
  }
  return kExitUsage;
}
