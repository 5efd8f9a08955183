#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tclab {

// Real-valued raster with no range constraint. Holds pre-clamp
// reconstructions.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // row-major

  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

// 8-bit luminance image stored as reals in [0, 255], row-major.
class GrayImage {
 public:
  GrayImage() = default;
  // Throws StructureError on size mismatch, RangeError on out-of-range samples.
  GrayImage(int width, int height, std::vector<double> data);

  // Clamps every sample to [0, 255].
  static GrayImage clamped(const Raster& raster);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const double> data() const { return data_; }
  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  Raster raster() const { return {width_, height_, data_}; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// An image cut into N x N blocks, each flattened row-major into a d = N*N
// vector. Blocks are stored contiguously in scan order (left-to-right,
// top-to-bottom).
struct BlockSet {
  int block_size = 0;
  int grid_cols = 0;
  int grid_rows = 0;
  int orig_width = 0;
  int orig_height = 0;
  std::vector<double> values;  // count() * dim() entries

  std::size_t dim() const { return static_cast<std::size_t>(block_size) * block_size; }
  std::size_t count() const { return dim() == 0 ? 0 : values.size() / dim(); }

  std::span<const double> block(std::size_t i) const { return {values.data() + i * dim(), dim()}; }
  std::span<double> block(std::size_t i) { return {values.data() + i * dim(), dim()}; }

  // Throws StructureError when the grid metadata disagrees with the payload.
  void validate() const;
};

// Parses binary (P5) or ASCII (P2) 8-bit PGM.
GrayImage load_pgm(std::span<const unsigned char> bytes);
GrayImage load_pgm_file(const std::string& path);

// Writes P5, rounding half-up to integers. Samples must already be in range.
std::vector<unsigned char> encode_pgm(const GrayImage& image);
void write_pgm_file(const GrayImage& image, const std::string& path);

// Pads right/bottom by edge replication to a multiple of block_size.
BlockSet tile(const GrayImage& image, int block_size);

// Inverse of tile, cropping the padding. Values are not clamped.
Raster untile(const BlockSet& blocks);

}  // namespace tclab
