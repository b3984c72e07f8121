#pragma once

#include <functional>
#include <string>
#include <vector>

#include "faddeev/integrator.hpp"
#include "faddeev/norms.hpp"
#include "faddeev/rhs.hpp"

namespace faddeev {

/// Noether energy of L = 1/2 dn.dn - kappa/4 (dn ^ dn)^2 (docs/energy.md).
/// Parts are the unweighted integrals; total = kinetic + gradient +
/// kappa (skyrme_t + skyrme_s), i.e. the plain sum for kappa = 1.
struct EnergyBreakdown {
  double kinetic = 0.0;   // 1/2 int |d_t n|^2
  double gradient = 0.0;  // 1/2 int |grad n|^2
  double skyrme_t = 0.0;  // 1/2 int sum_i |d_t n ^ d_i n|^2
  double skyrme_s = 0.0;  // 1/2 int |d_1 n ^ d_2 n|^2
  double total = 0.0;
};

EnergyBreakdown energy(const FieldState& state, const ModelParams& params = {});

struct FitWindow {
  double t0 = 10.0;
  double t1 = 40.0;
};

/// value ~ amplitude (1 + t)^gamma, least squares in log-log.
struct DecayFit {
  double t0 = 0.0, t1 = 0.0;
  double gamma = 0.0;
  double amplitude = 0.0;
  double rms = 0.0;
  std::size_t samples = 0;
};

/// Throws EmptyWindow unless t1 >= 2 t0 and at least 10 samples with
/// positive finite values fall in [t0, t1].
DecayFit fit_decay(std::span<const double> t, std::span<const double> values, FitWindow window);
DecayFit fit_decay(const SeriesTable& series, std::string_view column, FitWindow window);

/// Fixed CSV columns after t.
const std::vector<std::string>& standard_columns();

/// Computes one diagnostic row. prev/next (one step either side of cur) are
/// only needed for residual_f3, which is NaN when either is missing.
class DiagnosticsEvaluator {
 public:
  DiagnosticsEvaluator(ModelParams params, std::vector<NormSpec> extra);

  std::vector<std::string> columns() const;
  std::vector<double> evaluate(const FieldState* prev, const FieldState& cur,
                               const FieldState* next);

 private:
  ModelParams params_;
  std::vector<NormSpec> extra_;
  AccelerationKernel kernel_;
};

struct SweepEntry {
  double epsilon = 0.0;
  std::string status;  // RunStatus name, or "Rejected" for invalid data
  std::string message;
  DecayFit linf;       // Linf_s0
  DecayFit l2_n;       // L2_G1
  DecayFit l2_dn;      // L2_G1_dn
  bool fitted = false;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  /// Slope of log(prefactor of the Linf_s0 fit) against log(eps).
  double amplitude_slope = 0.0;
  /// Range of the pointwise-in-time slope of log Linf_s0 against log(eps).
  double time_slope_min = 0.0, time_slope_max = 0.0;
  bool all_completed = false;
  bool slopes_available = false;
};

using RunObserver = std::function<void(double epsilon, const Trajectory&)>;

/// Runs base with data.epsilon replaced by each entry (in order).
SweepReport epsilon_sweep(const RunConfig& base, std::span<const double> epsilons,
                          FitWindow window = {}, const RunObserver& observer = {});

/// Least-squares slope of y against x.
double regression_slope(std::span<const double> x, std::span<const double> y);

}  // namespace faddeev
