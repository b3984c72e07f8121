#pragma once

#include <optional>
#include <string>
#include <vector>

#include "faddeev/chart.hpp"
#include "faddeev/norms.hpp"
#include "faddeev/rhs.hpp"

namespace faddeev {

/// Half width needed so no wave reaches the periodic boundary by t_final.
double wrap_guard_half_width(double support_radius, double t_final);

struct RunConfig {
  int nx = 512;
  std::optional<double> half_width;  // derived from the wrap guard when absent
  double t_final = 40.0;
  double cfl = 0.5;
  int snapshot_stride = 0;  // steps between kept snapshots; 0 keeps first and last only
  int diag_stride = 8;      // steps between diagnostic rows
  ModelParams model;
  InitialDataSpec data;
  std::vector<NormSpec> norms;  // extra diagnostic columns
  bool enforce_wrap_guard = true;

  double resolved_half_width() const;
  Grid2D grid() const;
  /// Throws InvalidConfig naming the offending key.
  void validate() const;
};

enum class RunStatus { Completed, ChartExit, PrincipalDegenerate, NonFinite };
std::string_view to_string(RunStatus s);

struct Trajectory {
  RunStatus status = RunStatus::Completed;
  std::string message;
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<FieldState> snapshots;
  SeriesTable series;
};

/// Classical RK4 on d/dt (n, m) = (m, A^-1 R) with reusable stage buffers.
class Stepper {
 public:
  explicit Stepper(ModelParams params = {}) : kernel_(params) {}

  /// Advances `state` in place; on error `state` is left unchanged.
  void advance(FieldState& state, double dt);
  AccelerationKernel& kernel() noexcept { return kernel_; }

 private:
  AccelerationKernel kernel_;
  FieldState stage_;
  ScalarField a1_, a2_;
  ScalarField acc_n1_, acc_n2_, acc_m1_, acc_m2_;
};

/// One RK4 step. Requires dt > 0 (or dt < 0 for a backward step).
FieldState step(const FieldState& state, double dt, const ModelParams& params = {});

/// Steps from the configured initial data to t_final with dt = t_final / N,
/// N = ceil(t_final / (cfl h)). Failures end the run with a status.
Trajectory run(const RunConfig& config);
/// Same, from an explicit initial state (its grid overrides config.nx / L).
Trajectory run(const RunConfig& config, FieldState initial);

}  // namespace faddeev
