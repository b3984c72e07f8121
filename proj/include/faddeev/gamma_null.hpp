#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "faddeev/chart.hpp"
#include "faddeev/grid.hpp"

namespace faddeev {

/// Time jet of a scalar at one instant: d[k] = d_t^k u(t, .). This is the
/// space-time sample the vector fields act on; spatial derivatives come from
/// the grid stencils, time derivatives from the stored levels.
struct Jet {
  double t = 0.0;
  std::vector<ScalarField> d;

  std::size_t levels() const noexcept { return d.size(); }
  const Grid2D& grid() const { return d.at(0).grid(); }
  const ScalarField& value() const { return d.at(0); }
};

using SpaceTimeFn = std::function<double(double t, double x, double y)>;

/// Jet (n_a, m_a, accel_a) of chart component `component` (1 or 2).
Jet jet_from_state(const FieldState& state, const ScalarField& accel, int component);
/// Jet of the same component at zero acceleration level: (n_a, m_a).
Jet jet_from_state(const FieldState& state, int component);
/// Levels 0..4 from five slices u(t + k dt), k = -2..2 (levels 0-2 fourth
/// order in dt, 3-4 second order). Three slices give levels 0..2, second order.
Jet jet_from_slices(std::span<const ScalarField> slices, double t, double dt);
/// Samples f on the grid at the slice times and builds the jet.
Jet sample_jet(const SpaceTimeFn& f, const Grid2D& grid, double t, double dt, int n_slices = 5);

Jet jet_dt(const Jet& u);
Jet jet_dx(const Jet& u, int axis);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_axpy(double alpha, const Jet& x, const Jet& y);  // alpha x + y
/// (box u)_k = u_{k+2} - Lap u_k.
Jet jet_box(const Jet& u);

enum class GammaOp { Dt, D1, D2, Omega12, L0, L1, L2 };
inline constexpr std::array<GammaOp, 7> kAllGammaOps{GammaOp::Dt,      GammaOp::D1, GammaOp::D2,
                                                     GammaOp::Omega12, GammaOp::L0, GammaOp::L1,
                                                     GammaOp::L2};
std::string_view to_string(GammaOp op);

/// Whether the operator uses one time level (Dt, L0, L_i do).
bool consumes_level(GammaOp op) noexcept;

Jet apply_gamma_jet(GammaOp op, const Jet& u);
/// Value of Gamma u at the jet's instant.
ScalarField apply_gamma(GammaOp op, const Jet& u);

/// Q(f, g) = d_t f d_t g - grad f . grad g.
ScalarField null_Q(const Jet& f, const Jet& g);
/// Q_ab(f, g) = d_a f d_b g - d_b f d_a g with a, b in {0, 1, 2}, 0 = t.
ScalarField null_Qab(int alpha, int beta, const Jet& f, const Jet& g);
Jet null_Q_jet(const Jet& f, const Jet& g);
Jet null_Qab_jet(int alpha, int beta, const Jet& f, const Jet& g);

/// A scalar given in closed form with its first derivatives (d_t, d_1, d_2).
struct AnalyticField {
  SpaceTimeFn value;
  std::function<std::array<double, 3>(double t, double x, double y)> gradient;
};

struct Lemd11Residual {
  double q12 = 0.0, q01 = 0.0, q02 = 0.0, q = 0.0;
  double max() const noexcept;
};

/// Evaluates the null forms exactly from the closed-form gradients and
/// compares with the vector-field representation
///   Q_12 = (-d_t f Om12 g + L1 f d2 g - L2 f d1 g) / t
///   Q_0j = (d_t f Lj g - Lj f d_t g) / t
///   Q    = (d_t f L0 g - sum_i Li f d_i g) / t
/// built from the discrete jets. Requires t >= 1. Points within `edge`
/// cells of the box boundary are skipped (x-weighted stencils see the wrap).
Lemd11Residual check_lemd11_identity(const AnalyticField& f, const AnalyticField& g,
                                     const Grid2D& grid, double t, double dt, int edge = 4);

struct CommutatorRow {
  std::string name;
  double residual = 0.0;   // max |lhs - rhs|
  double reference = 0.0;  // max |rhs| or max |box f| when rhs = 0
  double relative() const noexcept { return reference > 0.0 ? residual / reference : residual; }
};

/// [box, Om12] f = 0, [box, L_i] f = 0, [box, L0] f = 2 box f, [box, d] f = 0.
std::vector<CommutatorRow> commutator_table(const SpaceTimeFn& f, const Grid2D& grid, double t,
                                            double dt, int edge = 6);

struct NullCommutatorFit {
  GammaOp op;
  std::string form;               // "Q", "Q01", "Q02", "Q12"
  std::array<double, 4> lambda{};  // coefficients on (Q, Q01, Q02, Q12)
  double relative_residual = 0.0;
};

/// Least-squares fit of [Gamma, N](f, g) onto span{Q, Q01, Q02, Q12}(f, g)
/// for every generator and every null form N.
std::vector<NullCommutatorFit> fit_null_commutators(const SpaceTimeFn& f, const SpaceTimeFn& g,
                                                    const Grid2D& grid, double t, double dt,
                                                    int edge = 6);

/// max over the selected points of (1 + |t - |x||) |du| / sum_{|a| <= 1} |Gamma^a u|,
/// with |du| = |d_t u| + |d_1 u| + |d_2 u|. Points are selected by
/// t - |x| >= min_cone_gap and distance >= edge cells from the box boundary.
/// A point where numerator and denominator vanish contributes 0.
double check_propa12(const Jet& u, double min_cone_gap, int edge = 4);

}  // namespace faddeev
