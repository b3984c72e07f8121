#include "faddeev/linear_wave.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "faddeev/norms.hpp"

namespace faddeev {

using cplx = std::complex<double>;

double effective_support_radius(const ScalarField& f, double rel) {
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  const Grid2D& g = f.grid();
  double r = 0.0;
  for (int j = 0; j < g.nx(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (std::abs(f(i, j)) > rel * peak) r = std::max(r, std::hypot(g.x(i), g.x(j)));
  return r;
}

void require_wrap_guard(const Grid2D& grid, double radius, double t) {
  const double need = radius + t + 2.0;
  if (grid.half_width() < need)
    throw Error(ErrorKind::WrapAround, "L = " + std::to_string(grid.half_width()) +
                                           " < support + t + 2 = " + std::to_string(need));
}

struct SpectralPropagator::Impl {
  int nx = 0, nc = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr, inv = nullptr;
  std::vector<double> omega;

  explicit Impl(const Grid2D& g) : nx(g.nx()), nc(g.nx() / 2 + 1) {
    real = static_cast<double*>(fftw_malloc(sizeof(double) * g.size()));
    spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nx * nc));
    fwd = fftw_plan_dft_r2c_2d(nx, nx, real, spec, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_2d(nx, nx, spec, real, FFTW_ESTIMATE);
    omega.resize(static_cast<std::size_t>(nx) * nc);
    const double k0 = std::numbers::pi / g.half_width();  // 2 pi / (2L)
    for (int j = 0; j < nx; ++j) {
      const double ky = k0 * (j <= nx / 2 ? j : j - nx);
      for (int i = 0; i < nc; ++i) omega[static_cast<std::size_t>(j) * nc + i] = std::hypot(k0 * i, ky);
    }
  }
  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec);
  }

  std::vector<cplx> forward(const ScalarField& f) {
    std::copy(f.values().begin(), f.values().end(), real);
    fftw_execute(fwd);
    const auto* s = reinterpret_cast<const cplx*>(spec);
    return {s, s + omega.size()};
  }

  ScalarField inverse(const std::vector<cplx>& c, const Grid2D& g) {
    std::copy(c.begin(), c.end(), reinterpret_cast<cplx*>(spec));
    fftw_execute(inv);
    ScalarField out(g);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = real[k] * scale;
    return out;
  }
};

SpectralPropagator::SpectralPropagator(const Grid2D& grid)
    : grid_(grid), impl_(std::make_unique<Impl>(grid)) {}

SpectralPropagator::~SpectralPropagator() = default;

namespace {

// sin(w s) / w and cos(w s), with the w -> 0 limits.
inline double sinc_prop(double w, double s) { return w == 0.0 ? s : std::sin(w * s) / w; }

}  // namespace

WaveState SpectralPropagator::evolve(const WaveState& s, double t) {
  require_same_grid(grid_, s.u.grid(), "SpectralPropagator::evolve");
  require_same_grid(grid_, s.ut.grid(), "SpectralPropagator::evolve");
  std::vector<cplx> u = impl_->forward(s.u);
  std::vector<cplx> v = impl_->forward(s.ut);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double w = impl_->omega[k];
    const double c = std::cos(w * t);
    const cplx u0 = u[k], v0 = v[k];
    u[k] = c * u0 + sinc_prop(w, t) * v0;
    v[k] = -w * std::sin(w * t) * u0 + c * v0;
  }
  return {impl_->inverse(u, grid_), impl_->inverse(v, grid_), s.t + t};
}

WaveState SpectralPropagator::evolve_forced(const WaveState& s, double delta, const ScalarField& f0,
                                            const ScalarField& fmid, const ScalarField& f1) {
  std::vector<cplx> u = impl_->forward(s.u);
  std::vector<cplx> v = impl_->forward(s.ut);
  const std::vector<cplx> a = impl_->forward(f0);
  const std::vector<cplx> b = impl_->forward(fmid);
  const std::vector<cplx> c = impl_->forward(f1);
  const double w6 = delta / 6.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double w = impl_->omega[k];
    const double cd = std::cos(w * delta), ch = std::cos(0.5 * w * delta);
    const double sd = sinc_prop(w, delta), sh = sinc_prop(w, 0.5 * delta);
    const cplx u0 = u[k], v0 = v[k];
    u[k] = cd * u0 + sd * v0 + w6 * (sd * a[k] + 4.0 * sh * b[k]);
    v[k] = -w * std::sin(w * delta) * u0 + cd * v0 + w6 * (cd * a[k] + 4.0 * ch * b[k] + c[k]);
  }
  return {impl_->inverse(u, grid_), impl_->inverse(v, grid_), s.t + delta};
}

double SpectralPropagator::energy(const WaveState& s) {
  const std::vector<cplx> u = impl_->forward(s.u);
  const std::vector<cplx> v = impl_->forward(s.ut);
  const int nx = impl_->nx, nc = impl_->nc;
  double sum = 0.0;
  for (int j = 0; j < nx; ++j)
    for (int i = 0; i < nc; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * nc + i;
      const double weight = (i == 0 || i == nx / 2) ? 1.0 : 2.0;
      const double w = impl_->omega[k];
      sum += weight * (std::norm(v[k]) + w * w * std::norm(u[k]));
    }
  const double n2 = static_cast<double>(grid_.size());
  return sum * grid_.cell_area() / n2;
}

// --- free functions ------------------------------------------------------------

WaveState evolve_homogeneous_state(const ScalarField& u0, const ScalarField& u1, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "evolve_homogeneous: t must be >= 0");
  require_same_grid(u0.grid(), u1.grid(), "evolve_homogeneous");
  require_finite(u0, "u0");
  require_finite(u1, "u1");
  const double radius = std::max(effective_support_radius(u0), effective_support_radius(u1));
  require_wrap_guard(u0.grid(), radius, t);
  if (t == 0.0) return {u0, u1, 0.0};
  SpectralPropagator prop(u0.grid());
  return prop.evolve({u0, u1, 0.0}, t);
}

ScalarField evolve_homogeneous(const ScalarField& u0, const ScalarField& u1, double t) {
  return evolve_homogeneous_state(u0, u1, t).u;
}

SampledSource sample_source(const SpaceTimeFn& f, const Grid2D& grid, double t, int n_pairs) {
  if (n_pairs < 1 || !(t > 0.0))
    throw Error(ErrorKind::InvalidArgument, "sample_source: need t > 0 and n_pairs >= 1");
  SampledSource s;
  s.dtau = t / (2.0 * n_pairs);
  for (int k = 0; k <= 2 * n_pairs; ++k) {
    const double tau = k * s.dtau;
    s.samples.push_back(ScalarField::sample(grid, [&](double x, double y) { return f(tau, x, y); }));
  }
  return s;
}

namespace {

// Relative threshold for the source support is taken against the largest
// sample so that a source switching off is not treated as global.
double source_peak(const std::vector<ScalarField>& samples) {
  double peak = 0.0;
  for (const ScalarField& f : samples) peak = std::max(peak, f.max_abs());
  return peak;
}

double abs_support_radius(const ScalarField& f, double threshold) {
  const Grid2D& g = f.grid();
  double r = 0.0;
  for (int j = 0; j < g.nx(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (std::abs(f(i, j)) > threshold) r = std::max(r, std::hypot(g.x(i), g.x(j)));
  return r;
}

}  // namespace

ScalarField evolve_duhamel(const SampledSource& f) {
  if (f.samples.size() < 3 || f.samples.size() % 2 == 0)
    throw Error(ErrorKind::InvalidArgument, "evolve_duhamel: need an odd number (>= 3) of samples");
  const Grid2D& g = f.samples[0].grid();
  const double t = f.final_time();
  const double thr = 1e-14 * source_peak(f.samples);
  for (std::size_t k = 0; k < f.samples.size(); ++k) {
    require_same_grid(g, f.samples[k].grid(), "evolve_duhamel");
    require_finite(f.samples[k], "source sample");
    if (thr > 0.0) require_wrap_guard(g, abs_support_radius(f.samples[k], thr), t - k * f.dtau);
  }
  SpectralPropagator prop(g);
  WaveState s{ScalarField(g), ScalarField(g), 0.0};
  for (std::size_t k = 0; k + 2 < f.samples.size(); k += 2)
    s = prop.evolve_forced(s, 2.0 * f.dtau, f.samples[k], f.samples[k + 1], f.samples[k + 2]);
  return s.u;
}

std::vector<WaveState> evolve_duhamel_at(const SpaceTimeFn& f, const ScalarField& u0,
                                         const ScalarField& u1, std::span<const double> times,
                                         double dtau) {
  if (!(dtau > 0.0)) throw Error(ErrorKind::InvalidArgument, "evolve_duhamel_at: dtau must be positive");
  const Grid2D& g = u0.grid();
  require_same_grid(g, u1.grid(), "evolve_duhamel_at");
  if (times.empty()) return {};
  const double t_end = times.back();
  const double data_r = std::max(effective_support_radius(u0), effective_support_radius(u1));
  require_wrap_guard(g, data_r, t_end);

  SpectralPropagator prop(g);
  auto sample = [&](double tau) {
    return ScalarField::sample(g, [&](double x, double y) { return f(tau, x, y); });
  };
  WaveState s{u0, u1, 0.0};
  ScalarField f0 = sample(0.0);
  std::vector<WaveState> out;
  std::size_t next = 0;
  while (next < times.size() && times[next] <= 0.0) out.push_back(s), ++next;
  // Source support is checked against an absolute floor: 1e-14 of the
  // largest value seen so far.
  double peak = f0.max_abs();
  while (next < times.size()) {
    const double target = times[next];
    const double remaining = target - s.t;
    const auto n = static_cast<int>(std::ceil(remaining / (2.0 * dtau) - 1e-9));
    const double delta = remaining / std::max(n, 1);
    for (int k = 0; k < std::max(n, 1); ++k) {
      const double tau = s.t;
      ScalarField fm = sample(tau + 0.5 * delta);
      ScalarField f1 = sample(tau + delta);
      peak = std::max({peak, fm.max_abs(), f1.max_abs()});
      if (peak > 0.0) require_wrap_guard(g, abs_support_radius(f0, 1e-14 * peak), t_end - tau);
      s = prop.evolve_forced(s, delta, f0, fm, f1);
      f0 = std::move(f1);
    }
    s.t = target;
    out.push_back(s);
    ++next;
  }
  return out;
}

// --- estimate checks -----------------------------------------------------------

namespace {

double l2_cartesian(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_area());
}

}  // namespace

std::vector<Thmb22Row> check_thmb22(const ScalarField& u0, const ScalarField& u1,
                                    const SpaceTimeFn& f, std::span<const double> times,
                                    double dtau) {
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() <= 0.0))
    throw Error(ErrorKind::InvalidArgument, "check_thmb22: times must be positive and ascending");
  const Grid2D& g = u0.grid();
  const std::vector<WaveState> states = evolve_duhamel_at(f, u0, u1, times, dtau);

  const double u0n = l2_cartesian(u0);
  const double u1n = norm_pq(u1, 4.0 / 3.0, 4.0 / 3.0, 0.0, Region::All);

  // Time integrals of the source norms, Simpson on a grid of spacing dtau
  // refined so that each output time is a node.
  auto integrand = [&](double tau) {
    const ScalarField ft = ScalarField::sample(g, [&](double x, double y) { return f(tau, x, y); });
    const double a = norm_pq(ft, 4.0 / 3.0, 4.0 / 3.0, tau, Region::Interior);
    const double b = norm_pq(ft, 1.0, 2.0, tau, Region::Exterior);
    const double c = norm_pq(ft, 4.0 / 3.0, 4.0 / 3.0, tau, Region::All);
    return std::array<double, 2>{a + b / std::sqrt(1.0 + tau), c};
  };

  std::vector<Thmb22Row> rows;
  double tau = 0.0;
  std::array<double, 2> acc{0.0, 0.0};
  std::array<double, 2> f_lo = integrand(0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double target = times[i];
    const auto n = std::max(1, static_cast<int>(std::ceil((target - tau) / (2.0 * dtau) - 1e-9)));
    const double delta = (target - tau) / n;
    for (int k = 0; k < n; ++k) {
      const auto fm = integrand(tau + 0.5 * delta);
      const auto fh = integrand(tau + delta);
      for (int c = 0; c < 2; ++c) acc[c] += delta / 6.0 * (f_lo[c] + 4.0 * fm[c] + fh[c]);
      f_lo = fh;
      tau += delta;
    }
    tau = target;

    Thmb22Row row;
    row.t = target;
    row.lhs = l2_cartesian(states[i].u);
    row.u0_norm = u0n;
    row.bracket = u1n + acc[0];
    row.bracket_rem1 = u1n + acc[1];
    const double grow = std::sqrt(1.0 + target);
    row.rhs = u0n + grow * row.bracket;
    row.c_hat = row.bracket > 0.0 ? (row.lhs - u0n) / (grow * row.bracket) : 0.0;
    row.c_hat_rem1 = row.bracket_rem1 > 0.0 ? (row.lhs - u0n) / (grow * row.bracket_rem1) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<B112Row> check_b112(const SpaceTimeFn& f, std::span<const double> times,
                                std::span<const double> ls, const Grid2D& grid, double dtau) {
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() <= 0.0))
    throw Error(ErrorKind::InvalidArgument, "check_b112: times must be positive and ascending");
  const ScalarField zero(grid);
  const std::vector<WaveState> states = evolve_duhamel_at(f, zero, zero, times, dtau);

  // ||f(tau)||_{Gamma,1,L^1}, jets from five time slices.
  const NormSpec spec{1.0, 1.0, 1, Region::All};
  auto gamma_l1 = [&](double tau) {
    const Jet jet = sample_jet(f, grid, tau, 0.25 * dtau);
    return jet.value().max_abs() == 0.0 ? 0.0 : gamma_norm(jet, spec);
  };

  std::vector<B112Row> rows;
  for (double l : ls) {
    double tau = 0.0, acc = 0.0;
    double lo = gamma_l1(0.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double target = times[i];
      const auto n = std::max(1, static_cast<int>(std::ceil((target - tau) / (2.0 * dtau) - 1e-9)));
      const double delta = (target - tau) / n;
      auto weight = [&](double s) { return std::pow(1.0 + s, -(0.5 - l)); };
      for (int k = 0; k < n; ++k) {
        const double mid = gamma_l1(tau + 0.5 * delta);
        const double hi = gamma_l1(tau + delta);
        acc += delta / 6.0 *
               (lo * weight(tau) + 4.0 * mid * weight(tau + 0.5 * delta) + hi * weight(tau + delta));
        lo = hi;
        tau += delta;
      }
      tau = target;

      B112Row row;
      row.t = target;
      row.l = l;
      row.source_integral = acc;
      const ScalarField& u = states[i].u;
      for (int j = 0; j < grid.nx(); ++j)
        for (int ii = 0; ii < grid.nx(); ++ii) {
          const double r = std::hypot(grid.x(ii), grid.x(j));
          const double w = std::sqrt(1.0 + target + r) * std::pow(1.0 + std::abs(target - r), l);
          row.weighted_sup = std::max(row.weighted_sup, std::abs(u(ii, j)) * w);
        }
      row.ratio = acc > 0.0 ? row.weighted_sup / acc : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace faddeev
