#include "faddeev/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace faddeev {

EnergyBreakdown energy(const FieldState& state, const ModelParams& params) {
  require_chart(state, params.r_max);
  const Grid2D& g = state.grid;
  const ScalarField d1n1 = dx(state.n1, 1), d2n1 = dx(state.n1, 2);
  const ScalarField d1n2 = dx(state.n2, 1), d2n2 = dx(state.n2, 2);
  const ScalarField lap1 = laplacian(state.n1), lap2 = laplacian(state.n2);

  EnergyBreakdown e;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double n1 = state.n1[k], n2 = state.n2[k], m1 = state.m1[k], m2 = state.m2[k];
    const double n3 = std::sqrt(1.0 - n1 * n1 - n2 * n2);
    const double inv3 = 1.0 / n3;
    const double m3 = -(n1 * m1 + n2 * m2) * inv3;
    e.kinetic += m1 * m1 + m2 * m2 + m3 * m3;

    // Summation by parts for the flat n1, n2 part (same stencil as the solver),
    // chain rule for n3.
    const double g31 = -(n1 * d1n1[k] + n2 * d1n2[k]) * inv3;
    const double g32 = -(n1 * d2n1[k] + n2 * d2n2[k]) * inv3;
    e.gradient += -(n1 * lap1[k] + n2 * lap2[k]) + g31 * g31 + g32 * g32;

    const double f01 = (m1 * d1n2[k] - d1n1[k] * m2) * inv3;
    const double f02 = (m1 * d2n2[k] - d2n1[k] * m2) * inv3;
    const double f12 = (d1n1[k] * d2n2[k] - d2n1[k] * d1n2[k]) * inv3;
    e.skyrme_t += f01 * f01 + f02 * f02;
    e.skyrme_s += f12 * f12;
  }
  const double w = 0.5 * g.cell_area();
  e.kinetic *= w;
  e.gradient *= w;
  e.skyrme_t *= w;
  e.skyrme_s *= w;
  e.total = e.kinetic + e.gradient + params.kappa * (e.skyrme_t + e.skyrme_s);
  return e;
}

// --- fits --------------------------------------------------------------------

double regression_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "regression_slope: need two or more matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "regression_slope: degenerate abscissae");
  return sxy / sxx;
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> values, FitWindow window) {
  if (t.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "fit_decay: size mismatch");
  if (!(window.t0 >= 0.0) || !(window.t1 >= 2.0 * window.t0) || !(window.t1 > window.t0))
    throw Error(ErrorKind::EmptyWindow, "fit window needs 0 <= t0 and t1 >= 2 t0");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t0 - 1e-9 || t[i] > window.t1 + 1e-9) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    lx.push_back(std::log1p(t[i]));
    ly.push_back(std::log(values[i]));
  }
  if (lx.size() < 10)
    throw Error(ErrorKind::EmptyWindow, "fit window holds " + std::to_string(lx.size()) +
                                            " usable samples (need 10)");
  DecayFit fit;
  fit.t0 = window.t0;
  fit.t1 = window.t1;
  fit.samples = lx.size();
  fit.gamma = regression_slope(lx, ly);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  const double intercept = my - fit.gamma * mx;
  fit.amplitude = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.gamma * lx[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(lx.size()));
  return fit;
}

DecayFit fit_decay(const SeriesTable& series, std::string_view column, FitWindow window) {
  const std::vector<double> t = series.times();
  const std::vector<double> v = series.column(column);
  return fit_decay(t, v, window);
}

// --- per-row diagnostics -----------------------------------------------------

const std::vector<std::string>& standard_columns() {
  static const std::vector<std::string> cols{"Linf_s0", "L2_G1",        "L2_G1_dn",
                                             "L43_int", "L12_ext",      "energy",
                                             "chart_margin", "residual_f3"};
  return cols;
}

DiagnosticsEvaluator::DiagnosticsEvaluator(ModelParams params, std::vector<NormSpec> extra)
    : params_(params), extra_(std::move(extra)), kernel_(params) {
  for (const NormSpec& n : extra_) n.validate();
}

std::vector<std::string> DiagnosticsEvaluator::columns() const {
  std::vector<std::string> cols = standard_columns();
  for (const NormSpec& n : extra_) cols.push_back(n.label());
  return cols;
}

std::vector<double> DiagnosticsEvaluator::evaluate(const FieldState* prev, const FieldState& cur,
                                                   const FieldState* next) {
  ScalarField a1, a2;
  kernel_.evaluate(cur, a1, a2);
  const Grid2D& g = cur.grid;
  std::vector<double> row;
  row.reserve(standard_columns().size() + extra_.size());

  double linf = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    linf = std::max(linf, std::hypot(cur.n1[k], cur.n2[k]));
  row.push_back(linf);

  const std::array<Jet, 2> n_jets{jet_from_state(cur, a1, 1), jet_from_state(cur, a2, 2)};
  row.push_back(gamma_norm(n_jets, NormSpec{2.0, 2.0, 1, Region::All}));

  std::vector<Jet> dn_jets;
  for (int c = 0; c < 2; ++c) {
    const Jet& u = n_jets[c];
    dn_jets.push_back(Jet{cur.t, {u.d[1], u.d[2]}});
    for (int axis = 1; axis <= 2; ++axis)
      dn_jets.push_back(Jet{cur.t, {dx(u.d[0], axis), dx(u.d[1], axis)}});
  }
  row.push_back(gamma_norm(dn_jets, NormSpec{2.0, 2.0, 1, Region::All}));

  // Nonlinearity f = d_t^2 n - Lap n of the chart equations.
  const ScalarField f1 = a1 - laplacian(cur.n1);
  const ScalarField f2 = a2 - laplacian(cur.n2);
  row.push_back(norm_pq(f1, 4.0 / 3.0, 4.0 / 3.0, cur.t, Region::Interior) +
                norm_pq(f2, 4.0 / 3.0, 4.0 / 3.0, cur.t, Region::Interior));
  row.push_back(norm_pq(f1, 1.0, 2.0, cur.t, Region::Exterior) +
                norm_pq(f2, 1.0, 2.0, cur.t, Region::Exterior));

  row.push_back(energy(cur, params_).total);
  row.push_back(chart_margin(cur, params_.r_max));

  double res = std::numeric_limits<double>::quiet_NaN();
  if (prev && next) {
    try {
      res = residual_faddeev3(*prev, cur, *next, params_).max_abs();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ChartExit) throw;
    }
  }
  row.push_back(res);

  for (const NormSpec& spec : extra_) row.push_back(gamma_norm(n_jets, spec));
  return row;
}

// --- epsilon sweep -----------------------------------------------------------

SweepReport epsilon_sweep(const RunConfig& base, std::span<const double> epsilons,
                          FitWindow window, const RunObserver& observer) {
  if (epsilons.empty()) throw Error(ErrorKind::InvalidConfig, "sweep: epsilon list is empty");
  SweepReport report;
  report.all_completed = true;
  std::vector<Trajectory> runs;
  runs.reserve(epsilons.size());
  for (double eps : epsilons) {
    SweepEntry entry;
    entry.epsilon = eps;
    RunConfig cfg = base;
    cfg.data.epsilon = eps;
    try {
      cfg.validate();
      runs.push_back(run(cfg));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidConfig && e.kind() != ErrorKind::AmplitudeTooLarge) throw;
      entry.status = "Rejected";
      entry.message = e.what();
      report.all_completed = false;
      report.entries.push_back(entry);
      continue;
    }
    const Trajectory& traj = runs.back();
    if (observer) observer(eps, traj);
    entry.status = std::string(to_string(traj.status));
    entry.message = traj.message;
    if (traj.status != RunStatus::Completed) report.all_completed = false;
    if (traj.status == RunStatus::Completed && eps > 0.0) {
      try {
        entry.linf = fit_decay(traj.series, "Linf_s0", window);
        entry.l2_n = fit_decay(traj.series, "L2_G1", window);
        entry.l2_dn = fit_decay(traj.series, "L2_G1_dn", window);
        entry.fitted = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyWindow) throw;
        entry.message = e.what();
      }
    }
    report.entries.push_back(entry);
  }

  std::vector<double> log_eps, log_amp;
  std::vector<const Trajectory*> fitted_runs;
  std::size_t run_index = 0;
  for (const SweepEntry& e : report.entries) {
    const bool ran = e.status != "Rejected";
    if (ran && e.fitted) {
      log_eps.push_back(std::log(e.epsilon));
      log_amp.push_back(std::log(e.linf.amplitude));
      fitted_runs.push_back(&runs[run_index]);
    }
    if (ran) ++run_index;
  }
  if (log_eps.size() >= 2) {
    report.slopes_available = true;
    report.amplitude_slope = regression_slope(log_eps, log_amp);
    // Pointwise-in-time slopes over rows shared by every fitted run.
    std::size_t rows = std::numeric_limits<std::size_t>::max();
    for (const Trajectory* t : fitted_runs) rows = std::min(rows, t->series.size());
    report.time_slope_min = std::numeric_limits<double>::infinity();
    report.time_slope_max = -std::numeric_limits<double>::infinity();
    const std::size_t col = fitted_runs.front()->series.column_index("Linf_s0");
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> y;
      for (const Trajectory* t : fitted_runs) y.push_back(std::log(t->series.records()[r].values[col]));
      const double s = regression_slope(log_eps, y);
      report.time_slope_min = std::min(report.time_slope_min, s);
      report.time_slope_max = std::max(report.time_slope_max, s);
    }
  }
  return report;
}

}  // namespace faddeev
