#include "tclab/image.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

#include "tclab/error.hpp"

namespace tclab {

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width <= 0 || height <= 0) throw StructureError("image dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw StructureError("image data length does not match width*height");
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 255.0)) throw RangeError("pixel intensity outside [0, 255]");
  }
}

GrayImage GrayImage::clamped(const Raster& raster) {
  std::vector<double> out(raster.data.size());
  std::transform(raster.data.begin(), raster.data.end(), out.begin(),
                 [](double v) { return std::clamp(v, 0.0, 255.0); });
  return GrayImage(raster.width, raster.height, std::move(out));
}

void BlockSet::validate() const {
  if (block_size < 1) throw StructureError("block size must be positive");
  if (grid_cols < 1 || grid_rows < 1) throw StructureError("empty block grid");
  if (values.size() != static_cast<std::size_t>(grid_cols) * grid_rows * dim())
    throw StructureError("block count does not match grid_cols*grid_rows");
  const long long n = block_size;
  if (orig_width < 1 || orig_height < 1 || grid_cols * n < orig_width ||
      grid_cols * n - orig_width >= n || grid_rows * n < orig_height ||
      grid_rows * n - orig_height >= n)
    throw StructureError("original extent inconsistent with block grid");
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads a decimal integer.
  long header_int(const char* what) {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) ++pos_;
    if (start == pos_) throw FormatError(std::string("PGM header: expected ") + what);
    long value = 0;
    auto first = reinterpret_cast<const char*>(bytes_.data() + start);
    auto [ptr, ec] = std::from_chars(first, first + (pos_ - start), value);
    if (ec != std::errc()) throw FormatError(std::string("PGM header: bad ") + what);
    return value;
  }

  // ASCII sample; end of input is truncation, anything else non-numeric is
  // a format error.
  long ascii_sample() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw TruncationError("PGM pixel payload truncated");
    if (!std::isdigit(bytes_[pos_])) throw FormatError("PGM: non-numeric ASCII sample");
    return header_int("sample");
  }

  std::span<const unsigned char> rest() const { return bytes_.subspan(pos_); }
  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  unsigned char peek() const { return bytes_[pos_]; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage load_pgm(std::span<const unsigned char> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
    throw FormatError("not a P5/P2 PGM file");
  const bool binary = bytes[1] == '5';
  PgmReader reader(bytes);
  reader.advance(2);
  if (reader.at_end() || !std::isspace(reader.peek())) throw FormatError("PGM: bad magic");

  const long width = reader.header_int("width");
  const long height = reader.header_int("height");
  const long maxval = reader.header_int("maxval");
  if (width <= 0 || height <= 0 || width > (1L << 20) || height > (1L << 20))
    throw FormatError("PGM: bad dimensions");
  if (maxval != 255) throw UnsupportedDepthError("PGM maxval must be 255, got " + std::to_string(maxval));

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(count);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (reader.at_end() || !std::isspace(reader.peek())) throw TruncationError("PGM pixel payload truncated");
    reader.advance(1);
    auto payload = reader.rest();
    if (payload.size() < count) throw TruncationError("PGM pixel payload truncated");
    std::copy_n(payload.begin(), count, data.begin());
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      long v = reader.ascii_sample();
      if (v > 255) throw FormatError("PGM: sample exceeds maxval");
      data[i] = static_cast<double>(v);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

GrayImage load_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_pgm(bytes);
}

std::vector<unsigned char> encode_pgm(const GrayImage& image) {
  std::string header = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + image.data().size());
  for (double v : image.data()) {
    out.push_back(static_cast<unsigned char>(std::min(255.0, std::floor(v + 0.5))));
  }
  return out;
}

void write_pgm_file(const GrayImage& image, const std::string& path) {
  auto bytes = encode_pgm(image);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path);
}

BlockSet tile(const GrayImage& image, int block_size) {
  if (block_size < 1) throw RangeError("block size must be >= 1");
  BlockSet set;
  set.block_size = block_size;
  set.orig_width = image.width();
  set.orig_height = image.height();
  set.grid_cols = (image.width() + block_size - 1) / block_size;
  set.grid_rows = (image.height() + block_size - 1) / block_size;
  const std::size_t n = static_cast<std::size_t>(block_size);
  set.values.resize(static_cast<std::size_t>(set.grid_cols) * set.grid_rows * n * n);

  std::size_t b = 0;
  for (int by = 0; by < set.grid_rows; ++by) {
    for (int bx = 0; bx < set.grid_cols; ++bx, ++b) {
      auto dst = set.block(b);
      for (int r = 0; r < block_size; ++r) {
        const int y = std::min(by * block_size + r, image.height() - 1);
        for (int c = 0; c < block_size; ++c) {
          const int x = std::min(bx * block_size + c, image.width() - 1);
          dst[r * n + c] = image.at(x, y);
        }
      }
    }
  }
  return set;
}

Raster untile(const BlockSet& blocks) {
  blocks.validate();
  const int n = blocks.block_size;
  Raster out{blocks.orig_width, blocks.orig_height,
             std::vector<double>(static_cast<std::size_t>(blocks.orig_width) * blocks.orig_height)};
  for (int y = 0; y < out.height; ++y) {
    const int by = y / n;
    const int r = y % n;
    for (int x = 0; x < out.width; ++x) {
      const std::size_t b = static_cast<std::size_t>(by) * blocks.grid_cols + x / n;
      out.data[static_cast<std::size_t>(y) * out.width + x] = blocks.block(b)[r * n + x % n];
    }
  }
  return out;
}

}  // namespace tclab
