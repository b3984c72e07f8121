#pragma once

#include <string>
#include <vector>

#include "faddeev/config.hpp"
#include "faddeev/diagnostics.hpp"
#include "faddeev/gamma_null.hpp"
#include "faddeev/linear_wave.hpp"

namespace faddeev {

/// Built-in analytic fields used by the check suites and the tests.
namespace builtin {

/// C-infinity bump exp(1 - 1 / (1 - s^2)) on |s| < 1, 0 elsewhere; peak 1.
double bump(double s) noexcept;

/// Localized travelling packets with closed-form first derivatives.
AnalyticField packet_f();
AnalyticField packet_g();

/// Outgoing profile (1 + r^2)^{-1/4} phi(t - r + 1), phi gaussian.
AnalyticField outgoing_profile();

enum class SourceKind { Interior, Exterior, Mixed };
std::string_view to_string(SourceKind k);
/// Self-similar source (2 + tau)^{-1/2} g(|x| / (2 + tau)) with g supported
/// in |y| < 0.45 (Interior), 0.7 < |y| < 0.95 (Exterior) or
/// 0.3 < |y| < 0.8 (Mixed); the interior region sits at |y| <= 1/2.
SpaceTimeFn self_similar_source(SourceKind k);

/// Space-time source supported in tau < 4, |x| < 3 for the pointwise estimate.
SpaceTimeFn pulse_source();

/// Ring psi(|x| - t) hugging the light cone, supported in t - 3 < |x| < t + 0.9.
ScalarField hardy_ring(const Grid2D& grid, double t);
/// Fixed bump of radius 2 at the origin.
ScalarField hardy_bump(const Grid2D& grid);

}  // namespace builtin

struct SuiteReport {
  std::string name;
  std::vector<std::string> lines;
  bool passed = true;

  void fail(const std::string& why);
};

const std::vector<std::string>& check_suite_names();
const std::vector<std::string>& oracle_names();

/// Null-form identity residuals (two resolutions) and outgoing decay fit.
SuiteReport check_nullforms(int nx = 128);
/// Commutator residuals and null-form commutator constants.
SuiteReport check_commutators(int nx = 256);
SuiteReport check_hardy_suite(int nx = 512);
SuiteReport check_propa12_suite(int nx = 128);
/// residual_faddeev3 along solver runs at cfl 0.5, 0.25, 0.125.
SuiteReport check_faddeev3(int nx = 256, double t_end = 2.0);
SuiteReport run_check(std::string_view suite, int nx_override = 0);

SuiteReport oracle_decay(int nx = 512);
SuiteReport oracle_b112(int nx = 256);
SuiteReport oracle_b24(int nx = 256);
SuiteReport run_oracle(std::string_view sub, int nx_override = 0);

// Building blocks shared with the acceptance tests.

struct NullDecay {
  std::vector<double> t, ratio;
  DecayFit fit;
};
/// ||Q(f, f)||_inf / ||df||_inf^2 for the outgoing profile at each time.
NullDecay null_form_decay(int nx, double half_width, std::span<const double> times);

struct Faddeev3Study {
  std::vector<double> cfl, residual, ratio;  // ratio[i] = residual[i] / residual[i + 1]
};
Faddeev3Study faddeev3_study(const RunConfig& base, double t_end, std::span<const double> cfls);

struct HardyRow {
  double t = 0.0, ring = 0.0, bump = 0.0;
};
std::vector<HardyRow> hardy_table(int nx, double half_width, double rho, std::span<const double> times);

struct LinearDecay {
  std::vector<double> t, sup;
  DecayFit fit;
};
/// Sup norm of the evolved gaussian (u1 = 0) sampled at `times`.
LinearDecay linear_decay(int nx, double sigma, std::span<const double> times);

}  // namespace faddeev
