#pragma once

#include <array>

#include "faddeev/chart.hpp"
#include "faddeev/grid.hpp"

namespace faddeev {

/// Model constants. `kappa` multiplies the quartic term of the Lagrangian
/// 1/2 dn.dn - kappa/4 (dn ^ dn).(dn ^ dn): kappa = 1 is the Faddeev model,
/// kappa = 0 the wave map into S^2, kappa = -1 the opposite-sign quartic term
/// (see docs/rhs_expansion.md).
struct ModelParams {
  double kappa = 1.0;
  double r_max = kDefaultRMax;
  double det_floor = 0.1;
};

/// Everything the principal-part assembly needs at each grid point, stored
/// as one field per entry. Index 0/1 is the chart component n1/n2.
struct DerivativeBundle {
  Grid2D grid;
  std::array<ScalarField, 2> n;
  std::array<ScalarField, 2> dt;             // m_a
  std::array<ScalarField, 2> d1, d2;         // spatial first derivatives
  std::array<ScalarField, 2> d11, d12, d22;  // spatial second derivatives
  std::array<ScalarField, 2> dt1, dt2;       // d_i m_a
};

/// Per-point A (d_t^2 n) = R.
struct PrincipalSystem {
  Grid2D grid;
  ScalarField a11, a12, a21, a22;
  ScalarField r1, r2;
};

DerivativeBundle bundle_derivatives(const FieldState& state);
/// Same as above but reuses the buffers already held by `out`.
void bundle_derivatives_into(const FieldState& state, DerivativeBundle& out);

PrincipalSystem assemble(const FieldState& state, const ModelParams& params = {});
PrincipalSystem assemble(const DerivativeBundle& bundle, const ModelParams& params = {});

/// Pointwise Cramer solve; throws PrincipalDegenerate if det A <= det_floor.
std::array<ScalarField, 2> solve_accel(const PrincipalSystem& sys, double det_floor = 0.1);

/// Fused assemble + solve with reusable scratch space; the integrator's hot path.
class AccelerationKernel {
 public:
  explicit AccelerationKernel(ModelParams params = {}) : params_(params) {}

  const ModelParams& params() const noexcept { return params_; }
  /// Writes d_t^2 n1, d_t^2 n2 into a1, a2 (resized if needed).
  void evaluate(const FieldState& state, ScalarField& a1, ScalarField& a2);
  /// Smallest det A seen in the last evaluate().
  double last_min_det() const noexcept { return last_min_det_; }

 private:
  ModelParams params_;
  DerivativeBundle bundle_;
  double last_min_det_ = 1.0;
};

std::array<ScalarField, 2> acceleration(const FieldState& state, const ModelParams& params = {});

/// Pointwise Euclidean norm of the residual of the 3-vector form of the
/// equations of motion on three equally spaced states (t - dt, t, t + dt).
/// Time derivatives of n use centered differences of the stored n; the
/// first time derivative inside the quartic current comes from m.
ScalarField residual_faddeev3(const FieldState& prev, const FieldState& cur,
                              const FieldState& next, const ModelParams& params = {});

}  // namespace faddeev
