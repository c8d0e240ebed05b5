#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mkdv/solver.hpp"

namespace mkdv {

// Deterministic shortest round-trip formatting ("%.17g" collapsed).
std::string format_double(double v);

struct CsvWriter {
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);
  void save(const std::filesystem::path& path) const;
  std::string str() const;

 private:
  std::string buf_;
  std::size_t n_cols_;
};

// Long-form snapshot dump: header `t,x,u`, one row per (snapshot, grid point).
void write_snapshots_csv(const std::filesystem::path& path,
                         const std::vector<FieldState>& snapshots);

// Binary columnar snapshot file. Layout (little endian):
//   bytes 0..7   magic "MKDVSNP0"
//   bytes 8..11  version (u32, = 1)
//   bytes 12..15 n_points (u32)
//   f64 half_length, u64 n_snapshots,
//   f64 t[n_snapshots], f64 u[n_snapshots * n_points] (row-major).
void write_snapshots_binary(const std::filesystem::path& path,
                            const std::vector<FieldState>& snapshots);
std::vector<FieldState> read_snapshots_binary(const std::filesystem::path& path);

// FNV-1a of a string; used for config hashes in run manifests.
std::uint64_t fnv1a(const std::string& s);

}  // namespace mkdv
