#include "tclab/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tclab/coding.hpp"
#include "tclab/error.hpp"
#include "tclab/image.hpp"
#include "tclab/metrics.hpp"

namespace tclab {

namespace fs = std::filesystem;

void SweepConfig::validate() const {
  if (block_sizes.empty()) throw ConfigError("block_sizes is empty");
  if (fractions.empty()) throw ConfigError("fractions is empty");
  if (transforms.empty()) throw ConfigError("transforms is empty");
  for (int n : block_sizes)
    if (n < 2) throw ConfigError("block size must be >= 2, got " + std::to_string(n));
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("fraction must lie in (0, 1], got " + format_real(f));
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

std::string SweepConfig::resolved_energy_path() const {
  if (!energy_output_path.empty()) return energy_output_path;
  fs::path p(output_path);
  return (p.parent_path() / (p.stem().string() + "_energy" + p.extension().string())).string();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(std::string(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto t = trim(text);
  if (t.empty()) return false;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  return ec == std::errc() && ptr == t.data() + t.size();
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  for (const auto& item : split(value, ',')) {
    T v{};
    if (!parse_number(item, v)) throw ConfigError("bad value '" + trim(item) + "' for " + key);
    out.push_back(v);
  }
  return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).string();
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text, const std::string& base_dir) {
  SweepConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "images") {
      config.image_paths.clear();
      for (const auto& p : split(value, ','))
        if (!trim(p).empty()) config.image_paths.push_back(resolve(base_dir, trim(p)));
    } else if (key == "block_sizes") {
      config.block_sizes = parse_list<int>(key, value);
    } else if (key == "fractions") {
      config.fractions = parse_list<double>(key, value);
    } else if (key == "transforms") {
      config.transforms.clear();
      for (const auto& t : split(value, ',')) {
        auto kind = parse_transform_kind(trim(t));
        if (!kind) throw ConfigError("unknown transform '" + trim(t) + "'");
        config.transforms.push_back(*kind);
      }
    } else if (key == "output") {
      config.output_path = resolve(base_dir, value);
    } else if (key == "emit_energy") {
      if (value == "true" || value == "1") config.emit_energy = true;
      else if (value == "false" || value == "0") config.emit_energy = false;
      else throw ConfigError("emit_energy must be true or false");
    } else if (key == "energy_output") {
      config.energy_output_path = resolve(base_dir, value);
    } else if (key == "threads") {
      if (!parse_number(value, config.threads)) throw ConfigError("bad value for threads");
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

std::string image_id(const std::string& path) { return fs::path(path).stem().string(); }

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

SweepResult run_sweep(const SweepConfig& config, std::ostream* log) {
  config.validate();
  if (config.threads > 0) set_threads(config.threads);

  SweepResult result;
  for (const auto& path : config.image_paths) {
    const std::string id = image_id(path);
    GrayImage image;
    try {
      image = load_pgm_file(path);
    } catch (const Error& e) {
      result.failures.push_back(path + ": " + e.what());
      if (log) *log << "FAIL " << path << ": " << e.what() << '\n';
      continue;
    }

    for (TransformKind kind : config.transforms) {
      for (int n : config.block_sizes) {
        if (kind == TransformKind::Hadamard && !is_power_of_two(n)) {
          result.skipped += config.fractions.size();
          if (log) *log << "skip " << id << ' ' << to_string(kind) << " N=" << n << " (not a power of two)\n";
          continue;
        }
        TransformBasis basis;
        try {
          const BlockSet blocks = tile(image, n);
          basis = make_basis(kind, blocks);
          if (config.emit_energy) {
            const EnergyCurve curve = image_energy_curve(blocks, basis);
            for (std::size_t k = 1; k <= curve.d(); ++k)
              result.energy.push_back({id, kind, n, static_cast<int>(k), curve.at(k)});
          }
        } catch (const Error& e) {
          result.failures.push_back(id + " " + std::string(to_string(kind)) + " N=" + std::to_string(n) + ": " +
                                    e.what());
          if (log) *log << "FAIL " << id << ' ' << to_string(kind) << " N=" << n << ": " << e.what() << '\n';
          continue;
        }

        for (double f : config.fractions) {
          try {
            const CompressResult coded = compress_with_basis(image, basis, f);
            SweepRecord rec;
            rec.image = id;
            rec.transform = kind;
            rec.block_size = n;
            rec.fraction = f;
            rec.k = coded.rate.k;
            rec.rate = coded.rate.rate;
            rec.mse = mse(image, coded.reconstruction);
            rec.psnr_db = psnr(rec.mse);
            if (log)
              *log << id << ' ' << to_string(kind) << " N=" << n << " f=" << f << " k=" << rec.k
                   << " psnr_db=" << format_real(rec.psnr_db) << '\n';
            result.records.push_back(std::move(rec));
          } catch (const Error& e) {
            result.failures.push_back(id + " " + std::string(to_string(kind)) + " N=" + std::to_string(n) +
                                      " f=" + format_real(f) + ": " + e.what());
            if (log) *log << "FAIL " << id << ' ' << to_string(kind) << " N=" << n << " f=" << f << ": " << e.what() << '\n';
          }
        }
      }
    }
  }
  return result;
}

namespace {

void check_field(const std::string& s) {
  if (s.find_first_of(",\n\r\"") != std::string::npos)
    throw IoError("CSV field contains a separator: '" + s + "'");
}

template <typename Record, typename WriteRow>
void write_file(const std::string& path, const std::vector<Record>& records, WriteRow write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write(out, records);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::vector<std::string>> read_rows(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FormatError("unexpected CSV header: " + line);
  std::vector<std::vector<std::string>> rows;
  const std::size_t columns = split(header, ',').size();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != columns) throw FormatError("CSV row has wrong column count: " + line);
    rows.push_back(std::move(fields));
  }
  return rows;
}

TransformKind field_kind(const std::string& s) {
  auto kind = parse_transform_kind(s);
  if (!kind) throw FormatError("unknown transform in CSV: " + s);
  return *kind;
}

template <typename T>
T field_number(const std::string& s) {
  T v{};
  if (!parse_number(s, v)) throw FormatError("bad number in CSV: " + s);
  return v;
}

constexpr const char* kResultsHeader = "image,transform,block_size,fraction,k,rate,mse,psnr_db";
constexpr const char* kEnergyHeader = "image,transform,block_size,k,energy_fraction";

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kResultsHeader << '\n';
  for (const auto& r : records) {
    check_field(r.image);
    out << r.image << ',' << to_string(r.transform) << ',' << r.block_size << ',' << format_real(r.fraction) << ','
        << r.k << ',' << format_real(r.rate) << ',' << format_real(r.mse) << ',' << format_real(r.psnr_db) << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<SweepRecord>& records) {
  write_file(path, records, [](std::ostream& o, const auto& r) { write_csv(o, r); });
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::vector<SweepRecord> out;
  for (const auto& f : read_rows(in, kResultsHeader)) {
    out.push_back({f[0], field_kind(f[1]), field_number<int>(f[2]), field_number<double>(f[3]),
                   field_number<int>(f[4]), field_number<double>(f[5]), field_number<double>(f[6]),
                   field_number<double>(f[7])});
  }
  return out;
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records) {
  out << kEnergyHeader << '\n';
  for (const auto& r : records) {
    check_field(r.image);
    out << r.image << ',' << to_string(r.transform) << ',' << r.block_size << ',' << r.k << ','
        << format_real(r.energy_fraction) << '\n';
  }
}

void write_energy_csv_file(const std::string& path, const std::vector<EnergyRecord>& records) {
  write_file(path, records, [](std::ostream& o, const auto& r) { write_energy_csv(o, r); });
}

std::vector<EnergyRecord> read_energy_csv(std::istream& in) {
  std::vector<EnergyRecord> out;
  for (const auto& f : read_rows(in, kEnergyHeader)) {
    out.push_back({f[0], field_kind(f[1]), field_number<int>(f[2]), field_number<int>(f[3]),
                   field_number<double>(f[4])});
  }
  return out;
}

}  // namespace tclab
