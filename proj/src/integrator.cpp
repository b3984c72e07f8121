#include "faddeev/integrator.hpp"

#include <cmath>

#include "faddeev/diagnostics.hpp"

namespace faddeev {

double wrap_guard_half_width(double support_radius, double t_final) {
  return support_radius + 1.1 * t_final + 2.0;
}

double RunConfig::resolved_half_width() const {
  return half_width ? *half_width : wrap_guard_half_width(data.support_radius(), t_final);
}

Grid2D RunConfig::grid() const {
  if (nx < 16 || nx % 2 != 0)
    throw Error(ErrorKind::InvalidConfig, "grid.nx must be even and >= 16, got " + std::to_string(nx));
  const double L = resolved_half_width();
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidConfig, "grid.L must be positive");
  return Grid2D(nx, L);
}

void RunConfig::validate() const {
  const Grid2D g = grid();
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw Error(ErrorKind::InvalidConfig, "time.t_final must be finite and >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(ErrorKind::InvalidConfig, "time.cfl must lie in (0, 1]");
  if (snapshot_stride < 0) throw Error(ErrorKind::InvalidConfig, "time.snapshot_stride must be >= 0");
  if (diag_stride < 1) throw Error(ErrorKind::InvalidConfig, "time.diag_stride must be >= 1");
  if (!(model.r_max > 0.0 && model.r_max < 1.0))
    throw Error(ErrorKind::InvalidConfig, "chart.r_max must lie in (0, 1)");
  for (const NormSpec& n : norms) n.validate();
  data.validate(g);
  if (enforce_wrap_guard && half_width) {
    const double need = wrap_guard_half_width(data.support_radius(), t_final);
    if (*half_width < need)
      throw Error(ErrorKind::InvalidConfig, "grid.L = " + std::to_string(*half_width) +
                                                " violates the wrap guard (need >= " +
                                                std::to_string(need) + ")");
  }
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "Completed";
    case RunStatus::ChartExit: return "ChartExit";
    case RunStatus::PrincipalDegenerate: return "PrincipalDegenerate";
    case RunStatus::NonFinite: return "NonFinite";
  }
  return "?";
}

// --- RK4 ---------------------------------------------------------------------

namespace {

void resize_like(ScalarField& f, const Grid2D& g) {
  if (!(f.grid() == g) || f.size() != g.size()) f = ScalarField(g);
}

}  // namespace

void Stepper::advance(FieldState& s, double dt) {
  const Grid2D& g = s.grid;
  for (ScalarField* f : {&a1_, &a2_, &acc_n1_, &acc_n2_, &acc_m1_, &acc_m2_}) resize_like(*f, g);
  const std::size_t n = g.size();
  const double w[4] = {dt / 6.0, dt / 3.0, dt / 3.0, dt / 6.0};
  const double c[3] = {0.5 * dt, 0.5 * dt, dt};

  stage_ = s;
  for (int k = 0; k < 4; ++k) {
    kernel_.evaluate(stage_, a1_, a2_);
    double* an1 = acc_n1_.values().data();
    double* an2 = acc_n2_.values().data();
    double* am1 = acc_m1_.values().data();
    double* am2 = acc_m2_.values().data();
    const double* sm1 = stage_.m1.values().data();
    const double* sm2 = stage_.m2.values().data();
    const double* a1 = a1_.values().data();
    const double* a2 = a2_.values().data();
    if (k == 0) {
      for (std::size_t p = 0; p < n; ++p) {
        an1[p] = s.n1[p] + w[0] * sm1[p];
        an2[p] = s.n2[p] + w[0] * sm2[p];
        am1[p] = s.m1[p] + w[0] * a1[p];
        am2[p] = s.m2[p] + w[0] * a2[p];
      }
    } else {
      for (std::size_t p = 0; p < n; ++p) {
        an1[p] += w[k] * sm1[p];
        an2[p] += w[k] * sm2[p];
        am1[p] += w[k] * a1[p];
        am2[p] += w[k] * a2[p];
      }
    }
    if (k == 3) break;
    // Next stage from the base state and this stage's slopes.
    for (std::size_t p = 0; p < n; ++p) {
      const double v1 = stage_.m1[p], v2 = stage_.m2[p];
      stage_.n1[p] = s.n1[p] + c[k] * v1;
      stage_.n2[p] = s.n2[p] + c[k] * v2;
      stage_.m1[p] = s.m1[p] + c[k] * a1[p];
      stage_.m2[p] = s.m2[p] + c[k] * a2[p];
    }
    stage_.t = s.t + c[k];
  }
  for (const ScalarField* f : {&acc_n1_, &acc_n2_, &acc_m1_, &acc_m2_}) require_finite(*f, "RK4 update");
  std::swap(s.n1, acc_n1_);
  std::swap(s.n2, acc_n2_);
  std::swap(s.m1, acc_m1_);
  std::swap(s.m2, acc_m2_);
  s.t += dt;
}

FieldState step(const FieldState& state, double dt, const ModelParams& params) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "step: dt must be finite and nonzero");
  Stepper stepper(params);
  FieldState out = state;
  stepper.advance(out, dt);
  return out;
}

// --- driver ------------------------------------------------------------------

namespace {

RunStatus status_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ChartExit: return RunStatus::ChartExit;
    case ErrorKind::PrincipalDegenerate: return RunStatus::PrincipalDegenerate;
    case ErrorKind::NonFinite: return RunStatus::NonFinite;
    default: return RunStatus::NonFinite;
  }
}

bool is_blowup(ErrorKind k) {
  return k == ErrorKind::ChartExit || k == ErrorKind::PrincipalDegenerate || k == ErrorKind::NonFinite;
}

}  // namespace

Trajectory run(const RunConfig& config) {
  config.validate();
  return run(config, make_initial_state(config.data, config.grid(), config.model.r_max));
}

Trajectory run(const RunConfig& config, FieldState initial) {
  const Grid2D& g = initial.grid;
  const double t0 = initial.t;
  const double span = config.t_final - t0;
  if (!(span >= 0.0)) throw Error(ErrorKind::InvalidConfig, "time.t_final precedes the initial time");
  if (!(config.cfl > 0.0)) throw Error(ErrorKind::InvalidConfig, "time.cfl must be positive");
  const double dt_max = config.cfl * g.spacing();
  const auto n_steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-12));
  const double dt = n_steps > 0 ? span / static_cast<double>(n_steps) : dt_max;
  const auto diag_stride = static_cast<std::size_t>(std::max(1, config.diag_stride));
  const auto snap_stride = static_cast<std::size_t>(std::max(0, config.snapshot_stride));

  DiagnosticsEvaluator diag(config.model, config.norms);
  Trajectory traj;
  traj.dt = dt;
  traj.series = SeriesTable(diag.columns());
  Stepper stepper(config.model);

  auto fail = [&](const Error& e) {
    traj.status = status_for(e.kind());
    traj.message = e.what();
  };

  try {
    require_chart(initial, config.model.r_max);
  } catch (const Error& e) {
    if (!is_blowup(e.kind())) throw;
    fail(e);
    traj.snapshots.push_back(initial);
    return traj;
  }

  // residual_f3 needs the state one step back at the first row.
  std::optional<FieldState> prev;
  try {
    FieldState back = initial;
    stepper.advance(back, -dt);
    back.t = t0 - dt;
    prev = std::move(back);
  } catch (const Error& e) {
    if (!is_blowup(e.kind())) throw;
  }

  FieldState cur = std::move(initial);
  traj.snapshots.push_back(cur);
  for (std::size_t k = 0;; ++k) {
    const bool last = k == n_steps;
    std::optional<FieldState> next;
    std::optional<Error> step_error;
    try {
      FieldState ahead = cur;
      stepper.advance(ahead, dt);
      if (last) require_chart(ahead, config.model.r_max);
      ahead.t = t0 + static_cast<double>(k + 1) * dt;
      next = std::move(ahead);
    } catch (const Error& e) {
      if (!is_blowup(e.kind())) throw;
      step_error = e;
    }

    if (k % diag_stride == 0 || last) {
      // The lookahead step past t_final only feeds residual_f3.
      try {
        traj.series.add(cur.t, diag.evaluate(prev ? &*prev : nullptr, cur, next ? &*next : nullptr));
      } catch (const Error& e) {
        if (!is_blowup(e.kind())) throw;
        fail(e);
        if (traj.snapshots.back().t != cur.t) traj.snapshots.push_back(cur);
        return traj;
      }
    }
    if (last) {
      if (traj.snapshots.back().t != cur.t) traj.snapshots.push_back(cur);
      break;
    }
    if (step_error) {
      fail(*step_error);
      traj.snapshots.push_back(cur);
      return traj;
    }
    prev = std::move(cur);
    cur = std::move(*next);
    traj.steps = k + 1;
    if (snap_stride > 0 && traj.steps % snap_stride == 0 && traj.steps != n_steps)
      traj.snapshots.push_back(cur);
    if (chart_margin(cur, config.model.r_max) < 0.0) {
      traj.status = RunStatus::ChartExit;
      traj.message = "chart left at t = " + std::to_string(cur.t);
      traj.snapshots.push_back(cur);
      return traj;
    }
  }
  traj.status = RunStatus::Completed;
  return traj;
}

}  // namespace faddeev
