#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "faddeev/error.hpp"

namespace faddeev {

/// Uniform periodic grid on the box [-L, L)^2 with nx points per axis.
/// Index (i, j) sits at (-L + i h, -L + j h); storage is row-major with i
/// (the x_1 axis) running fastest.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int nx, double half_width);

  int nx() const noexcept { return nx_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * nx_; }
  double x(int i) const noexcept { return -half_width_ + i * spacing_; }
  double cell_area() const noexcept { return spacing_ * spacing_; }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  int wrap(int i) const noexcept { return ((i % nx_) + nx_) % nx_; }

  friend bool operator==(const Grid2D& a, const Grid2D& b) noexcept {
    return a.nx_ == b.nx_ && a.half_width_ == b.half_width_;
  }

 private:
  int nx_ = 0;
  double half_width_ = 0.0;
  double spacing_ = 0.0;
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid2D& grid, double fill = 0.0);
  ScalarField(const Grid2D& grid, std::vector<double> values);

  /// Samples f(x, y) at every grid point.
  template <class F>
  static ScalarField sample(const Grid2D& grid, F&& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.nx(); ++j)
      for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.x(i), grid.x(j));
    return out;
  }

  const Grid2D& grid() const noexcept { return grid_; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  /// this += a * o
  ScalarField& axpy(double a, const ScalarField& o);

  double max_abs() const noexcept;
  bool all_finite() const noexcept;

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

/// Throws Error{NonFinite} naming `what` if any value is NaN/Inf.
void require_finite(const ScalarField& f, const char* what);
void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what);

/// 4th-order centered first derivative along axis 1 (x) or 2 (y), periodic.
ScalarField dx(const ScalarField& f, int axis);
/// 4th-order centered second derivative; the mixed case applies the first
/// derivative stencil along each axis, so dxx(f,1,2) == dxx(f,2,1) bitwise.
ScalarField dxx(const ScalarField& f, int axis_a, int axis_b);
/// dxx(f,1,1) + dxx(f,2,2)
ScalarField laplacian(const ScalarField& f);

// Raw stencil kernels shared by the hot paths (no validation, no allocation).
void dx_into(std::span<const double> f, int nx, double h, int axis, std::span<double> out);
void dxx_into(std::span<const double> f, int nx, double h, int axis, std::span<double> out);

struct PolarSamples {
  std::vector<double> radii;  // r_k = k dr, r_0 = 0
  int n_theta = 0;
  double dr = 0.0;
  std::vector<double> values;  // [k * n_theta + j]

  std::size_t n_r() const noexcept { return radii.size(); }
  double operator()(std::size_t k, int j) const noexcept { return values[k * n_theta + j]; }
  double theta(int j) const noexcept;
};

/// Bilinear resampling of f onto (r_k cos th_j, r_k sin th_j) for r_k <= L.
/// The origin row holds n_theta copies of the same value.
PolarSamples to_polar(const ScalarField& f, int n_theta, double dr);

/// Bilinear interpolation at an arbitrary point; zero outside [-L, L)^2.
double interpolate(const ScalarField& f, double x, double y) noexcept;

namespace testing {
/// Test hook: perturbs the first-derivative stencil weights by `amount`
/// (relative) while alive. Used as a negative control for the check suites.
class ScopedStencilCorruption {
 public:
  explicit ScopedStencilCorruption(double amount);
  ~ScopedStencilCorruption();
  ScopedStencilCorruption(const ScopedStencilCorruption&) = delete;
  ScopedStencilCorruption& operator=(const ScopedStencilCorruption&) = delete;

 private:
  double previous_;
};
}  // namespace testing

}  // namespace faddeev
