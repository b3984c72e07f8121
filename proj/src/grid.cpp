#include "faddeev/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace faddeev {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ChartExit: return "ChartExit";
    case ErrorKind::AmplitudeTooLarge: return "AmplitudeTooLarge";
    case ErrorKind::PrincipalDegenerate: return "PrincipalDegenerate";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::WrapAround: return "WrapAround";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {
double g_stencil_corruption = 0.0;
}

Grid2D::Grid2D(int nx, double half_width)
    : nx_(nx), half_width_(half_width), spacing_(2.0 * half_width / nx) {
  if (nx < 16 || nx % 2 != 0)
    throw Error(ErrorKind::InvalidArgument,
                "grid.nx must be even and >= 16, got " + std::to_string(nx));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorKind::InvalidArgument, "grid.L must be positive");
}

ScalarField::ScalarField(const Grid2D& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid2D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::InvalidArgument, "field size does not match grid");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "operator+=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "operator-=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "axpy");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * o.values_[k];
  return *this;
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "hadamard");
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

void require_finite(const ScalarField& f, const char* what) {
  if (!f.all_finite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite values");
}

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
  if (!(a == b)) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": grid mismatch");
}

// --- stencils -------------------------------------------------------------

void dx_into(std::span<const double> f, int nx, double h, int axis, std::span<double> out) {
  const double w1 = 8.0 * (1.0 + g_stencil_corruption);
  const double inv = 1.0 / (12.0 * h);
  if (axis == 1) {
    for (int j = 0; j < nx; ++j) {
      const double* row = f.data() + static_cast<std::size_t>(j) * nx;
      double* o = out.data() + static_cast<std::size_t>(j) * nx;
      auto at = [&](int i) { return row[((i % nx) + nx) % nx]; };
      for (int i : {0, 1, nx - 2, nx - 1})
        o[i] = (at(i - 2) - w1 * at(i - 1) + w1 * at(i + 1) - at(i + 2)) * inv;
      for (int i = 2; i < nx - 2; ++i)
        o[i] = (row[i - 2] - w1 * row[i - 1] + w1 * row[i + 1] - row[i + 2]) * inv;
    }
  } else {
    for (int j = 0; j < nx; ++j) {
      auto row = [&](int jj) {
        return f.data() + static_cast<std::size_t>(((jj % nx) + nx) % nx) * nx;
      };
      const double* m2 = row(j - 2);
      const double* m1 = row(j - 1);
      const double* p1 = row(j + 1);
      const double* p2 = row(j + 2);
      double* o = out.data() + static_cast<std::size_t>(j) * nx;
      for (int i = 0; i < nx; ++i) o[i] = (m2[i] - w1 * m1[i] + w1 * p1[i] - p2[i]) * inv;
    }
  }
}

void dxx_into(std::span<const double> f, int nx, double h, int axis, std::span<double> out) {
  const double inv = 1.0 / (12.0 * h * h);
  if (axis == 1) {
    for (int j = 0; j < nx; ++j) {
      const double* row = f.data() + static_cast<std::size_t>(j) * nx;
      double* o = out.data() + static_cast<std::size_t>(j) * nx;
      auto at = [&](int i) { return row[((i % nx) + nx) % nx]; };
      for (int i : {0, 1, nx - 2, nx - 1})
        o[i] = (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2)) * inv;
      for (int i = 2; i < nx - 2; ++i)
        o[i] = (-row[i - 2] + 16.0 * row[i - 1] - 30.0 * row[i] + 16.0 * row[i + 1] - row[i + 2]) *
               inv;
    }
  } else {
    for (int j = 0; j < nx; ++j) {
      auto row = [&](int jj) {
        return f.data() + static_cast<std::size_t>(((jj % nx) + nx) % nx) * nx;
      };
      const double* m2 = row(j - 2);
      const double* m1 = row(j - 1);
      const double* c = row(j);
      const double* p1 = row(j + 1);
      const double* p2 = row(j + 2);
      double* o = out.data() + static_cast<std::size_t>(j) * nx;
      for (int i = 0; i < nx; ++i)
        o[i] = (-m2[i] + 16.0 * m1[i] - 30.0 * c[i] + 16.0 * p1[i] - p2[i]) * inv;
    }
  }
}

namespace {
void check_axis(int axis) {
  if (axis != 1 && axis != 2)
    throw Error(ErrorKind::InvalidArgument, "axis must be 1 or 2");
}
}  // namespace

ScalarField dx(const ScalarField& f, int axis) {
  check_axis(axis);
  require_finite(f, "dx input");
  ScalarField out(f.grid());
  dx_into(f.values(), f.grid().nx(), f.grid().spacing(), axis, out.values());
  return out;
}

ScalarField dxx(const ScalarField& f, int axis_a, int axis_b) {
  check_axis(axis_a);
  check_axis(axis_b);
  require_finite(f, "dxx input");
  const Grid2D& g = f.grid();
  ScalarField out(g);
  if (axis_a == axis_b) {
    dxx_into(f.values(), g.nx(), g.spacing(), axis_a, out.values());
  } else {
    ScalarField tmp(g);
    dx_into(f.values(), g.nx(), g.spacing(), 1, tmp.values());
    dx_into(tmp.values(), g.nx(), g.spacing(), 2, out.values());
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = dxx(f, 1, 1);
  out += dxx(f, 2, 2);
  return out;
}

// --- polar resampling -----------------------------------------------------

double PolarSamples::theta(int j) const noexcept {
  return 2.0 * std::numbers::pi * j / n_theta;
}

double interpolate(const ScalarField& f, double x, double y) noexcept {
  const Grid2D& g = f.grid();
  const double L = g.half_width();
  if (x < -L || y < -L || x >= L || y >= L) return 0.0;
  const double h = g.spacing();
  const double fx = (x + L) / h;
  const double fy = (y + L) / h;
  int i0 = static_cast<int>(std::floor(fx));
  int j0 = static_cast<int>(std::floor(fy));
  const double tx = fx - i0;
  const double ty = fy - j0;
  const int n = g.nx();
  i0 = std::min(i0, n - 1);
  j0 = std::min(j0, n - 1);
  // The last cell interpolates toward the periodic image of column 0.
  const int i1 = (i0 + 1) % n;
  const int j1 = (j0 + 1) % n;
  return (1 - tx) * (1 - ty) * f(i0, j0) + tx * (1 - ty) * f(i1, j0) + (1 - tx) * ty * f(i0, j1) +
         tx * ty * f(i1, j1);
}

PolarSamples to_polar(const ScalarField& f, int n_theta, double dr) {
  if (n_theta < 8) throw Error(ErrorKind::InvalidArgument, "to_polar: n_theta must be >= 8");
  if (!(dr > 0.0) || dr > f.grid().spacing() * (1.0 + 1e-12))
    throw Error(ErrorKind::InvalidArgument, "to_polar: need 0 < dr <= h");
  PolarSamples p;
  p.n_theta = n_theta;
  p.dr = dr;
  const double L = f.grid().half_width();
  const auto n_r = static_cast<std::size_t>(std::floor(L / dr + 1e-9)) + 1;
  p.radii.resize(n_r);
  p.values.resize(n_r * n_theta);
  std::vector<double> c(n_theta), s(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    c[j] = std::cos(p.theta(j));
    s[j] = std::sin(p.theta(j));
  }
  for (std::size_t k = 0; k < n_r; ++k) {
    const double r = k * dr;
    p.radii[k] = r;
    if (k == 0) {
      const double v0 = interpolate(f, 0.0, 0.0);
      for (int j = 0; j < n_theta; ++j) p.values[j] = v0;
      continue;
    }
    for (int j = 0; j < n_theta; ++j) p.values[k * n_theta + j] = interpolate(f, r * c[j], r * s[j]);
  }
  return p;
}

namespace testing {
ScopedStencilCorruption::ScopedStencilCorruption(double amount) : previous_(g_stencil_corruption) {
  g_stencil_corruption = amount;
}
ScopedStencilCorruption::~ScopedStencilCorruption() { g_stencil_corruption = previous_; }
}  // namespace testing

}  // namespace faddeev
