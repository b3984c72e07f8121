#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "faddeev/chart.hpp"
#include "faddeev/norms.hpp"

namespace faddeev {

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr const char* kCsvHeader = "# fdvs-csv v1";

/// "FDVS", u32 version, u32 nx, f64 L, f64 t, then n1, n2, m1, m2 as
/// row-major f64 arrays; everything little-endian.
void write_snapshot(std::ostream& os, const FieldState& s);
void write_snapshot(const std::filesystem::path& path, const FieldState& s);
FieldState read_snapshot(std::istream& is);
FieldState read_snapshot(const std::filesystem::path& path);

/// Shortest round-trip decimal ("nan" for NaN).
std::string format_double(double v);

/// Header comment, a "t,<columns>" line, then one line per record.
void write_csv(std::ostream& os, const SeriesTable& table);
void write_csv(const std::filesystem::path& path, const SeriesTable& table);

}  // namespace faddeev
