#pragma once

// Term-by-term evaluation of the chart equations with nested centered
// differences in t, x, y; no product-rule expansion. Used to validate the
// hand-expanded principal system.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "faddeev/chart.hpp"

namespace oracle {

using Vec2 = std::array<double, 2>;
using MapFn = std::function<Vec2(double t, double x, double y)>;

/// A chart-valued space-time map with its exact time derivative.
struct TestMap {
  std::string name;
  MapFn n;
  MapFn nt;
};

/// Maps periodic on [-pi, pi)^2 with |n| <= 0.4.
std::vector<TestMap> periodic_maps();

/// E = box n + (S1 - S2) n - kappa T, with
///   S1 = (dn1.dn1 + dn2.dn2) / s^2,  S2 = (n2^2 dn1.dn1 + n1^2 dn2.dn2 - 2 n1 n2 dn1.dn2) / s^2,
///   T_a = (1/s) sum_nu d_mu(J^{mu nu} / s) V_{a,nu},  J^{mu nu} = d^mu n1 d^nu n2 - d^nu n1 d^mu n2,
///   V_1 = (1 - n1^2) d n2 + n1 n2 d n1,  V_2 = -(1 - n2^2) d n1 - n1 n2 d n2,
/// s = sqrt(1 - n1^2 - n2^2), indices raised with diag(1, -1, -1).
/// kappa = -1 is the printed chart form; kappa = +1 the Lagrangian's sign.
Vec2 chart_operator(const MapFn& n, double t, double x, double y, double delta, double kappa);

struct OracleAccel {
  Vec2 accel;                       // d_tt n implied by E = 0 at the given lower-order data
  std::array<Vec2, 2> principal;    // principal[a][b] = dE_a / d(d_tt n_b)
};

/// Principal matrix by a symmetric secant on n +- (c/2)(t - t0)^2 e_b, then
/// a = d_tt n - A^{-1} E.
OracleAccel oracle_accel(const MapFn& n, double t, double x, double y, double delta, double kappa);

/// Samples (n, d_t n) of the map at time t on the grid.
faddeev::FieldState sample_state(const TestMap& map, const faddeev::Grid2D& grid, double t);

}  // namespace oracle
