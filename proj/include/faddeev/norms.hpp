#pragma once

#include <limits>
#include <string>
#include <vector>

#include "faddeev/gamma_null.hpp"
#include "faddeev/grid.hpp"

namespace faddeev {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr int kThetaSamples = 256;

/// Interior = {|x| <= 1 + t/2}, Exterior its complement.
enum class Region { All, Interior, Exterior };

std::string_view to_string(Region r);
Region region_from_string(std::string_view s);
bool in_region(Region region, double r, double t) noexcept;

struct NormSpec {
  double p = 2.0;
  double q = 2.0;
  int s = 0;
  Region region = Region::All;

  void validate() const;
  /// Column name, e.g. "Lp2_q2_s1_int".
  std::string label() const;
};

/// Mixed radial-angular norm: L^q over the angle (trapezoid, n_theta
/// samples), then L^p over the radius with weight r, radial step h.
/// p or q = kInf takes the maximum.
double norm_pq(const ScalarField& f, double p, double q, double t, Region region,
               int n_theta = kThetaSamples);
double norm_pq(const PolarSamples& samples, double p, double q, double t, Region region);

/// sum over ordered compositions Gamma^k, |k| <= s, of norm_pq(Gamma^k u).
double gamma_norm(const Jet& u, const NormSpec& spec);
/// Same, summed over several components (e.g. n1 and n2).
double gamma_norm(std::span<const Jet> components, const NormSpec& spec);

/// ||v / (rho + |t - |x||)||_{L^2} / ||grad v||_{L^2} with Riemann sums and
/// the grid stencils. Throws SupportViolation if |v| > 1e-10 somewhere
/// with |x| > t + rho. v = 0 gives 0.
double check_hardy(const ScalarField& v, double t, double rho);

/// Time-stamped diagnostic row.
struct SeriesRecord {
  double t = 0.0;
  std::vector<double> values;
};

/// Rows of SeriesRecords sharing one column schema.
class SeriesTable {
 public:
  SeriesTable() = default;
  explicit SeriesTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<SeriesRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  /// Appends a row; t must exceed the last time, values must match the schema.
  void add(double t, std::vector<double> values);
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  std::vector<double> times() const;

 private:
  std::vector<std::string> columns_;
  std::vector<SeriesRecord> records_;
};

}  // namespace faddeev
