#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tclab/transforms.hpp"

namespace tclab {

struct SweepConfig {
  std::vector<std::string> image_paths;
  std::vector<int> block_sizes{4, 8, 16, 32};
  std::vector<double> fractions{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
  std::vector<TransformKind> transforms{TransformKind::DCT, TransformKind::Hadamard, TransformKind::PCA};
  std::string output_path = "results.csv";
  bool emit_energy = false;
  std::string energy_output_path;  // empty: derived from output_path
  int threads = 0;                 // 0: available parallelism

  // Throws ConfigError on a block size < 2 or a fraction outside (0, 1].
  void validate() const;
  std::string resolved_energy_path() const;
};

// Flat key=value text; '#' starts a comment; lists are comma-separated.
// Keys: images, block_sizes, fractions, transforms, output, emit_energy,
// energy_output, threads. Relative image and output paths resolve against
// base_dir. Throws ConfigError.
SweepConfig parse_sweep_config(const std::string& text, const std::string& base_dir = "");

struct SweepRecord {
  std::string image;
  TransformKind transform = TransformKind::DCT;
  int block_size = 0;
  double fraction = 0.0;
  int k = 0;
  double rate = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;  // +inf when mse == 0

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct EnergyRecord {
  std::string image;
  TransformKind transform = TransformKind::DCT;
  int block_size = 0;
  int k = 0;
  double energy_fraction = 0.0;

  friend bool operator==(const EnergyRecord&, const EnergyRecord&) = default;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<EnergyRecord> energy;
  std::vector<std::string> failures;  // one message per failed image or cell
  std::size_t skipped = 0;            // unsupported (transform, N) cells

  bool ok() const { return failures.empty(); }
};

// Image identifier used in CSV rows: the file name without directory or
// extension.
std::string image_id(const std::string& path);

// Runs every (image, transform, N, f) cell in that order. The PCA basis is
// trained once per (image, N) on all blocks of that image. Per-cell progress
// goes to log when non-null. Failures are collected, not thrown.
SweepResult run_sweep(const SweepConfig& config, std::ostream* log = nullptr);

// Header image,transform,block_size,fraction,k,rate,mse,psnr_db; reals as
// %.17g, "inf" for the PSNR cap.
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_csv_file(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& in);

// Header image,transform,block_size,k,energy_fraction.
void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records);
void write_energy_csv_file(const std::string& path, const std::vector<EnergyRecord>& records);
std::vector<EnergyRecord> read_energy_csv(std::istream& in);

// %.17g, or "inf"/"-inf"/"nan".
std::string format_real(double value);

}  // namespace tclab
