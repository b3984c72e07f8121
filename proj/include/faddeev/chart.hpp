#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "faddeev/grid.hpp"

namespace faddeev {

inline constexpr double kDefaultRMax = 0.9;

/// Chart components (n1, n2) of a map into the upper hemisphere, with
/// n3 = sqrt(1 - n1^2 - n2^2), plus their time derivatives m = d_t n.
struct FieldState {
  Grid2D grid;
  ScalarField n1, n2;
  ScalarField m1, m2;
  double t = 0.0;

  static FieldState zero(const Grid2D& grid, double t = 0.0);
};

struct SphereMap {
  Grid2D grid;
  std::array<ScalarField, 3> n;
};

struct Point2 {
  double x = 0.0, y = 0.0;
};

/// Gaussian bumps eps * w_a * exp(-|x - c_a|^2 / (2 sigma^2)) for n_a and
/// eps * v_a * (same bump) for m_a. Optional seeded noise adds a few extra
/// bumps of relative amplitude `noise` to n1, n2.
struct InitialDataSpec {
  double epsilon = 0.05;
  double sigma = 4.0;
  std::array<Point2, 2> centers{Point2{0.0, 0.0}, Point2{1.5, 0.0}};
  std::array<double, 2> weights{1.0, 0.5};
  std::array<double, 2> velocity{0.0, 0.0};
  double noise = 0.0;
  std::uint64_t seed = 0;

  /// epsilon in [0, 0.3], |weights| <= 1, sigma > 2h, finite entries.
  void validate(const Grid2D& grid) const;
  /// Radius beyond which every bump is below 1e-14 of its peak.
  double support_radius() const;
};

/// Relative level at which a gaussian is treated as zero when sizing boxes.
inline constexpr double kSupportThreshold = 1e-14;

FieldState make_initial_state(const InitialDataSpec& spec, const Grid2D& grid,
                              double r_max = kDefaultRMax);

/// r_max^2 - max(n1^2 + n2^2); negative means the chart is left.
double chart_margin(const FieldState& state, double r_max = kDefaultRMax);

/// Throws ChartExit if chart_margin(state, r_max) < 0.
void require_chart(const FieldState& state, double r_max = kDefaultRMax);

SphereMap reconstruct_sphere(const FieldState& state, double r_max = kDefaultRMax);

/// d_t n3 from the chain rule, -(n1 m1 + n2 m2) / n3.
ScalarField n3_rate(const FieldState& state);

}  // namespace faddeev
