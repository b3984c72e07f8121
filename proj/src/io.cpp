#include "faddeev/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

namespace faddeev {

namespace {

template <class T>
void put_le(std::ostream& os, T v) {
  std::array<unsigned char, sizeof(T)> b;
  std::memcpy(b.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  os.write(reinterpret_cast<const char*>(b.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> b;
  if (!is.read(reinterpret_cast<char*>(b.data()), sizeof(T)))
    throw Error(ErrorKind::Io, "snapshot truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  T v;
  std::memcpy(&v, b.data(), sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const FieldState& s) {
  os.write("FDVS", 4);
  put_le<std::uint32_t>(os, kSnapshotVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.grid.nx()));
  put_le<double>(os, s.grid.half_width());
  put_le<double>(os, s.t);
  for (const ScalarField* f : {&s.n1, &s.n2, &s.m1, &s.m2})
    for (double v : f->values()) put_le<double>(os, v);
  if (!os) throw Error(ErrorKind::Io, "snapshot write failed");
}

void write_snapshot(const std::filesystem::path& path, const FieldState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string());
  write_snapshot(os, s);
}

FieldState read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "FDVS", 4) != 0)
    throw Error(ErrorKind::Io, "not an FDVS snapshot");
  const auto version = get_le<std::uint32_t>(is);
  if (version != kSnapshotVersion)
    throw Error(ErrorKind::Io, "unsupported snapshot version " + std::to_string(version));
  const auto nx = get_le<std::uint32_t>(is);
  const double L = get_le<double>(is);
  const double t = get_le<double>(is);
  if (nx > (1u << 15)) throw Error(ErrorKind::Io, "snapshot nx out of range");
  const Grid2D g(static_cast<int>(nx), L);
  FieldState s = FieldState::zero(g, t);
  for (ScalarField* f : {&s.n1, &s.n2, &s.m1, &s.m2})
    for (double& v : f->values()) v = get_le<double>(is);
  return s;
}

FieldState read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_snapshot(is);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& os, const SeriesTable& table) {
  os << kCsvHeader << '\n' << 't';
  for (const std::string& c : table.columns()) os << ',' << c;
  os << '\n';
  for (const SeriesRecord& r : table.records()) {
    os << format_double(r.t);
    for (double v : r.values) os << ',' << format_double(v);
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::Io, "csv write failed");
}

void write_csv(const std::filesystem::path& path, const SeriesTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string());
  write_csv(os, table);
}

}  // namespace faddeev
