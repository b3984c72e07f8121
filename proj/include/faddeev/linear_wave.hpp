#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "faddeev/gamma_null.hpp"
#include "faddeev/grid.hpp"

namespace faddeev {

/// u and d_t u at time t.
struct WaveState {
  ScalarField u, ut;
  double t = 0.0;
};

/// Largest |x| with |f| > rel * max|f| (0 for f = 0).
double effective_support_radius(const ScalarField& f, double rel = 1e-14);
/// Throws WrapAround unless L >= radius + t + 2.
void require_wrap_guard(const Grid2D& grid, double radius, double t);

/// Exact periodic evolution of box u = f, mode by mode, with FFTW plans
/// owned by the instance. Not thread safe; use one per thread.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Grid2D& grid);
  ~SpectralPropagator();
  SpectralPropagator(const SpectralPropagator&) = delete;
  SpectralPropagator& operator=(const SpectralPropagator&) = delete;

  const Grid2D& grid() const noexcept { return grid_; }

  /// Homogeneous evolution by t (no wrap check).
  WaveState evolve(const WaveState& s, double t);
  /// Duhamel evolution across [s.t, s.t + delta] for a source given at the
  /// interval ends and midpoint (Simpson rule with exact propagators).
  WaveState evolve_forced(const WaveState& s, double delta, const ScalarField& f0,
                          const ScalarField& fmid, const ScalarField& f1);
  /// int (d_t u)^2 + |grad u|^2 by Parseval (spectral gradient).
  double energy(const WaveState& s);

 private:
  struct Impl;
  Grid2D grid_;
  std::unique_ptr<Impl> impl_;
};

/// u(t) for box u = 0, u(0) = u0, d_t u(0) = u1. Throws WrapAround when the
/// data reach the boundary before t.
ScalarField evolve_homogeneous(const ScalarField& u0, const ScalarField& u1, double t);
WaveState evolve_homogeneous_state(const ScalarField& u0, const ScalarField& u1, double t);

/// Source sampled at tau_k = k dtau, k = 0..2N (an even number of intervals,
/// so odd samples serve as Simpson midpoints over pairs of steps).
struct SampledSource {
  double dtau = 0.0;
  std::vector<ScalarField> samples;
  double final_time() const noexcept {
    return samples.empty() ? 0.0 : dtau * static_cast<double>(samples.size() - 1);
  }
};

SampledSource sample_source(const SpaceTimeFn& f, const Grid2D& grid, double t, int n_pairs);

/// Solution of box u = f with zero data at the source's final time.
ScalarField evolve_duhamel(const SampledSource& f);

/// Duhamel evolution with optional data, reporting the state at each of
/// `times` (ascending, each a multiple of 2 dtau up to rounding).
std::vector<WaveState> evolve_duhamel_at(const SpaceTimeFn& f, const ScalarField& u0,
                                         const ScalarField& u1, std::span<const double> times,
                                         double dtau);

struct Thmb22Row {
  double t = 0.0;
  double lhs = 0.0;      // ||u(t)||_{L^2}
  double u0_norm = 0.0;  // ||u0||_{L^2}
  double bracket = 0.0;  // ||u1||_{4/3} + int ||f||_{4/3, chi1} + (1+tau)^-1/2 ||f||_{L^{1,2}, chi2}
  double rhs = 0.0;      // u0_norm + (1 + t)^{1/2} bracket
  double c_hat = 0.0;    // (lhs - u0_norm) / ((1 + t)^{1/2} bracket), 0 if bracket = 0
  double bracket_rem1 = 0.0;  // ||u1||_{4/3} + int ||f||_{4/3}
  double c_hat_rem1 = 0.0;
};

/// Evaluates both sides of the L^2 estimate with constant 1 at each time.
std::vector<Thmb22Row> check_thmb22(const ScalarField& u0, const ScalarField& u1,
                                    const SpaceTimeFn& f, std::span<const double> times,
                                    double dtau);

struct B112Row {
  double t = 0.0;
  double l = 0.0;
  double weighted_sup = 0.0;  // max |u| (1 + t + |x|)^1/2 (1 + |t - |x||)^l
  double source_integral = 0.0;  // int ||f||_{Gamma,1,L^1} (1 + tau)^{-(1/2 - l)}
  double ratio = 0.0;
};

/// Zero-data Duhamel solution of a space-time source; weighted sup table
/// for each l and time.
std::vector<B112Row> check_b112(const SpaceTimeFn& f, std::span<const double> times,
                                std::span<const double> ls, const Grid2D& grid, double dtau);

}  // namespace faddeev
