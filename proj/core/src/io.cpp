#include "mkdv/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "mkdv/errors.hpp"

namespace mkdv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 16; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : n_cols_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header[i];
  }
  buf_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_cols_) throw IoError("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += format_double(values[i]);
  }
  buf_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_) throw IoError("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += cells[i];
  }
  buf_ += '\n';
}

std::string CsvWriter::str() const { return buf_; }

void CsvWriter::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << buf_;
}

void write_snapshots_csv(const std::filesystem::path& path,
                         const std::vector<FieldState>& snapshots) {
  CsvWriter csv({"t", "x", "u"});
  for (const auto& s : snapshots)
    for (std::size_t j = 0; j < s.u.grid.n(); ++j)
      csv.row({s.t, s.u.grid.x()[j], s.u.values[j]});
  csv.save(path);
}

namespace {
constexpr char kMagic[8] = {'M', 'K', 'D', 'V', 'S', 'N', 'P', '0'};
}

void write_snapshots_binary(const std::filesystem::path& path,
                            const std::vector<FieldState>& snapshots) {
  if (snapshots.empty()) throw IoError("write_snapshots_binary: empty sequence");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  const std::uint32_t version = 1;
  const std::uint32_t n = static_cast<std::uint32_t>(snapshots.front().u.grid.n());
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  const double half_length = snapshots.front().u.grid.half_length();
  out.write(reinterpret_cast<const char*>(&half_length), 8);
  const std::uint64_t count = snapshots.size();
  out.write(reinterpret_cast<const char*>(&count), 8);
  for (const auto& s : snapshots) out.write(reinterpret_cast<const char*>(&s.t), 8);
  for (const auto& s : snapshots)
    out.write(reinterpret_cast<const char*>(s.u.values.data()),
              static_cast<std::streamsize>(8 * s.u.values.size()));
}

std::vector<FieldState> read_snapshots_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  std::uint32_t version = 0, n = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  if (!in || std::memcmp(magic, kMagic, 8) != 0 || version != 1)
    throw IoError("bad snapshot file header: " + path.string());
  double half_length = 0.0;
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&half_length), 8);
  in.read(reinterpret_cast<char*>(&count), 8);
  const LineGrid grid(n, half_length);
  std::vector<double> times(count);
  in.read(reinterpret_cast<char*>(times.data()), static_cast<std::streamsize>(8 * count));
  std::vector<FieldState> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    FieldSample u(grid);
    in.read(reinterpret_cast<char*>(u.values.data()), static_cast<std::streamsize>(8 * n));
    out.emplace_back(times[i], std::move(u));
  }
  if (!in) throw IoError("truncated snapshot file: " + path.string());
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mkdv
