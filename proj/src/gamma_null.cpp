#include "faddeev/gamma_null.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace faddeev {

namespace {

void require_levels(const Jet& u, std::size_t n, const char* what) {
  if (u.levels() < n)
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + ": jet needs " + std::to_string(n) + " time levels");
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool inside(const Grid2D& g, int i, int j, int edge) {
  return i >= edge && j >= edge && i < g.nx() - edge && j < g.nx() - edge;
}

template <class Fn>
void for_interior(const Grid2D& g, int edge, Fn&& fn) {
  for (int j = 0; j < g.nx(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (inside(g, i, j, edge)) fn(i, j, g.index(i, j));
}

}  // namespace

// --- jets ------------------------------------------------------------------

Jet jet_from_state(const FieldState& state, const ScalarField& accel, int component) {
  Jet u = jet_from_state(state, component);
  require_same_grid(state.grid, accel.grid(), "jet_from_state");
  u.d.push_back(accel);
  return u;
}

Jet jet_from_state(const FieldState& state, int component) {
  if (component != 1 && component != 2)
    throw Error(ErrorKind::InvalidArgument, "jet_from_state: component must be 1 or 2");
  Jet u;
  u.t = state.t;
  u.d = component == 1 ? std::vector<ScalarField>{state.n1, state.m1}
                       : std::vector<ScalarField>{state.n2, state.m2};
  return u;
}

Jet jet_from_slices(std::span<const ScalarField> s, double t, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "jet_from_slices: dt must be positive");
  for (const ScalarField& f : s) require_same_grid(s[0].grid(), f.grid(), "jet_from_slices");
  Jet u;
  u.t = t;
  const Grid2D& g = s[0].grid();
  if (s.size() == 3) {
    u.d = {s[1], ScalarField(g), ScalarField(g)};
    for (std::size_t k = 0; k < g.size(); ++k) {
      u.d[1][k] = (s[2][k] - s[0][k]) / (2.0 * dt);
      u.d[2][k] = (s[2][k] - 2.0 * s[1][k] + s[0][k]) / (dt * dt);
    }
    return u;
  }
  if (s.size() != 5) throw Error(ErrorKind::InvalidArgument, "jet_from_slices: need 3 or 5 slices");
  u.d = {s[2], ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  const double dt2 = dt * dt;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double m2 = s[0][k], m1 = s[1][k], c = s[2][k], p1 = s[3][k], p2 = s[4][k];
    u.d[1][k] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * dt);
    u.d[2][k] = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * dt2);
    u.d[3][k] = (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * dt2 * dt);
    u.d[4][k] = (m2 - 4.0 * m1 + 6.0 * c - 4.0 * p1 + p2) / (dt2 * dt2);
  }
  return u;
}

Jet sample_jet(const SpaceTimeFn& f, const Grid2D& grid, double t, double dt, int n_slices) {
  if (n_slices != 3 && n_slices != 5)
    throw Error(ErrorKind::InvalidArgument, "sample_jet: n_slices must be 3 or 5");
  const int half = n_slices / 2;
  std::vector<ScalarField> slices;
  for (int k = -half; k <= half; ++k) {
    const double tk = t + k * dt;
    slices.push_back(ScalarField::sample(grid, [&](double x, double y) { return f(tk, x, y); }));
  }
  return jet_from_slices(slices, t, dt);
}

Jet jet_dt(const Jet& u) {
  require_levels(u, 2, "jet_dt");
  Jet out;
  out.t = u.t;
  out.d.assign(u.d.begin() + 1, u.d.end());
  return out;
}

Jet jet_dx(const Jet& u, int axis) {
  Jet out;
  out.t = u.t;
  for (const ScalarField& f : u.d) out.d.push_back(dx(f, axis));
  return out;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  require_same_grid(a.grid(), b.grid(), "jet_mul");
  const std::size_t n = std::min(a.levels(), b.levels());
  Jet out;
  out.t = a.t;
  for (std::size_t k = 0; k < n; ++k) {
    ScalarField acc(a.grid());
    for (std::size_t j = 0; j <= k; ++j) {
      const double c = binom(static_cast<int>(k), static_cast<int>(j));
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += c * a.d[j][p] * b.d[k - j][p];
    }
    out.d.push_back(std::move(acc));
  }
  return out;
}

Jet jet_axpy(double alpha, const Jet& x, const Jet& y) {
  const std::size_t n = std::min(x.levels(), y.levels());
  Jet out;
  out.t = y.t;
  for (std::size_t k = 0; k < n; ++k) {
    ScalarField f = y.d[k];
    f.axpy(alpha, x.d[k]);
    out.d.push_back(std::move(f));
  }
  return out;
}

Jet jet_box(const Jet& u) {
  require_levels(u, 3, "jet_box");
  Jet out;
  out.t = u.t;
  for (std::size_t k = 0; k + 2 < u.levels(); ++k) out.d.push_back(u.d[k + 2] - laplacian(u.d[k]));
  return out;
}

// --- vector fields -----------------------------------------------------------

std::string_view to_string(GammaOp op) {
  switch (op) {
    case GammaOp::Dt: return "Dt";
    case GammaOp::D1: return "D1";
    case GammaOp::D2: return "D2";
    case GammaOp::Omega12: return "Omega12";
    case GammaOp::L0: return "L0";
    case GammaOp::L1: return "L1";
    case GammaOp::L2: return "L2";
  }
  return "?";
}

bool consumes_level(GammaOp op) noexcept {
  return op == GammaOp::Dt || op == GammaOp::L0 || op == GammaOp::L1 || op == GammaOp::L2;
}

Jet apply_gamma_jet(GammaOp op, const Jet& u) {
  switch (op) {
    case GammaOp::Dt: return jet_dt(u);
    case GammaOp::D1: return jet_dx(u, 1);
    case GammaOp::D2: return jet_dx(u, 2);
    default: break;
  }
  const Grid2D& g = u.grid();
  const int nx = g.nx();
  const std::size_t n_out = consumes_level(op) ? u.levels() - 1 : u.levels();
  if (n_out == 0) require_levels(u, 2, "apply_gamma");
  Jet out;
  out.t = u.t;
  const double t = u.t;
  for (std::size_t k = 0; k < n_out; ++k) {
    ScalarField r(g);
    if (op == GammaOp::Omega12) {
      const ScalarField d1 = dx(u.d[k], 1), d2 = dx(u.d[k], 2);
      for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t p = g.index(i, j);
          r[p] = g.x(i) * d2[p] - g.x(j) * d1[p];
        }
    } else if (op == GammaOp::L0) {
      const ScalarField d1 = dx(u.d[k], 1), d2 = dx(u.d[k], 2);
      for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t p = g.index(i, j);
          r[p] = t * u.d[k + 1][p] + static_cast<double>(k) * u.d[k][p] + g.x(i) * d1[p] +
                 g.x(j) * d2[p];
        }
    } else {  // L1, L2
      const int axis = op == GammaOp::L1 ? 1 : 2;
      const ScalarField di = dx(u.d[k], axis);
      ScalarField di_prev(g);
      if (k > 0) di_prev = dx(u.d[k - 1], axis);
      for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t p = g.index(i, j);
          const double xi = axis == 1 ? g.x(i) : g.x(j);
          r[p] = t * di[p] + static_cast<double>(k) * di_prev[p] + xi * u.d[k + 1][p];
        }
    }
    out.d.push_back(std::move(r));
  }
  return out;
}

ScalarField apply_gamma(GammaOp op, const Jet& u) { return apply_gamma_jet(op, u).d.at(0); }

// --- null forms --------------------------------------------------------------

namespace {

Jet partial(const Jet& u, int alpha) { return alpha == 0 ? jet_dt(u) : jet_dx(u, alpha); }

void check_index(int a) {
  if (a < 0 || a > 2) throw Error(ErrorKind::InvalidArgument, "null form index must be 0, 1 or 2");
}

}  // namespace

Jet null_Q_jet(const Jet& f, const Jet& g) {
  Jet out = jet_mul(jet_dt(f), jet_dt(g));
  out = jet_axpy(-1.0, jet_mul(jet_dx(f, 1), jet_dx(g, 1)), out);
  out = jet_axpy(-1.0, jet_mul(jet_dx(f, 2), jet_dx(g, 2)), out);
  return out;
}

Jet null_Qab_jet(int a, int b, const Jet& f, const Jet& g) {
  check_index(a);
  check_index(b);
  const Jet fa = partial(f, a), fb = partial(f, b), ga = partial(g, a), gb = partial(g, b);
  return jet_axpy(-1.0, jet_mul(fb, ga), jet_mul(fa, gb));
}

ScalarField null_Q(const Jet& f, const Jet& g) {
  require_levels(f, 2, "null_Q");
  require_levels(g, 2, "null_Q");
  ScalarField out = hadamard(f.d[1], g.d[1]);
  out -= hadamard(dx(f.d[0], 1), dx(g.d[0], 1));
  out -= hadamard(dx(f.d[0], 2), dx(g.d[0], 2));
  return out;
}

ScalarField null_Qab(int a, int b, const Jet& f, const Jet& g) {
  check_index(a);
  check_index(b);
  auto first = [](const Jet& u, int alpha) {
    if (alpha == 0) {
      require_levels(u, 2, "null_Qab");
      return u.d[1];
    }
    return dx(u.d[0], alpha);
  };
  return hadamard(first(f, a), first(g, b)) - hadamard(first(f, b), first(g, a));
}

// --- identity checks ---------------------------------------------------------

double Lemd11Residual::max() const noexcept { return std::max({q12, q01, q02, q}); }

Lemd11Residual check_lemd11_identity(const AnalyticField& f, const AnalyticField& g,
                                     const Grid2D& grid, double t, double dt, int edge) {
  if (!(t >= 1.0)) throw Error(ErrorKind::InvalidArgument, "check_lemd11_identity: need t >= 1");
  const Jet jf = sample_jet(f.value, grid, t, dt);
  const Jet jg = sample_jet(g.value, grid, t, dt);

  const ScalarField ft = jf.d[1], gt = jg.d[1];
  const ScalarField g1 = dx(jg.d[0], 1), g2 = dx(jg.d[0], 2);
  const ScalarField om_g = apply_gamma(GammaOp::Omega12, jg);
  const ScalarField L0g = apply_gamma(GammaOp::L0, jg);
  const ScalarField L1f = apply_gamma(GammaOp::L1, jf), L2f = apply_gamma(GammaOp::L2, jf);
  const ScalarField L1g = apply_gamma(GammaOp::L1, jg), L2g = apply_gamma(GammaOp::L2, jg);

  Lemd11Residual res;
  for_interior(grid, edge, [&](int i, int j, std::size_t p) {
    const double x = grid.x(i), y = grid.x(j);
    const auto df = f.gradient(t, x, y);
    const auto dg = g.gradient(t, x, y);
    const double q12 = df[1] * dg[2] - df[2] * dg[1];
    const double q01 = df[0] * dg[1] - df[1] * dg[0];
    const double q02 = df[0] * dg[2] - df[2] * dg[0];
    const double q = df[0] * dg[0] - df[1] * dg[1] - df[2] * dg[2];

    const double r12 = (-ft[p] * om_g[p] + L1f[p] * g2[p] - L2f[p] * g1[p]) / t;
    const double r01 = (ft[p] * L1g[p] - L1f[p] * gt[p]) / t;
    const double r02 = (ft[p] * L2g[p] - L2f[p] * gt[p]) / t;
    const double rq = (ft[p] * L0g[p] - L1f[p] * g1[p] - L2f[p] * g2[p]) / t;
    res.q12 = std::max(res.q12, std::abs(q12 - r12));
    res.q01 = std::max(res.q01, std::abs(q01 - r01));
    res.q02 = std::max(res.q02, std::abs(q02 - r02));
    res.q = std::max(res.q, std::abs(q - rq));
  });
  return res;
}

std::vector<CommutatorRow> commutator_table(const SpaceTimeFn& f, const Grid2D& grid, double t,
                                            double dt, int edge) {
  const Jet u = sample_jet(f, grid, t, dt);
  const Jet box_u = jet_box(u);
  double box_ref = 0.0;
  for_interior(grid, edge, [&](int, int, std::size_t p) {
    box_ref = std::max(box_ref, std::abs(box_u.d[0][p]));
  });

  std::vector<CommutatorRow> rows;
  for (GammaOp op : kAllGammaOps) {
    const ScalarField lhs = jet_box(apply_gamma_jet(op, u)).d[0] - apply_gamma(op, box_u);
    const double factor = op == GammaOp::L0 ? 2.0 : 0.0;
    CommutatorRow row;
    row.name = std::string("[box, ") + std::string(to_string(op)) + "]" +
               (op == GammaOp::L0 ? " - 2 box" : "");
    for_interior(grid, edge, [&](int, int, std::size_t p) {
      row.residual = std::max(row.residual, std::abs(lhs[p] - factor * box_u.d[0][p]));
    });
    row.reference = (op == GammaOp::L0 ? 2.0 : 1.0) * box_ref;
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Solves the dense n x n system in place by partial pivoting.
template <std::size_t N>
std::array<double, N> solve_small(std::array<std::array<double, N>, N> a, std::array<double, N> b) {
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    if (a[c][c] == 0.0) throw Error(ErrorKind::InvalidArgument, "singular least-squares system");
    for (std::size_t r = c + 1; r < N; ++r) {
      const double m = a[r][c] / a[c][c];
      for (std::size_t k = c; k < N; ++k) a[r][k] -= m * a[c][k];
      b[r] -= m * b[c];
    }
  }
  std::array<double, N> x{};
  for (std::size_t c = N; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < N; ++k) s -= a[c][k] * x[k];
    x[c] = s / a[c][c];
  }
  return x;
}

using FormFn = Jet (*)(const Jet&, const Jet&);

Jet form_q(const Jet& f, const Jet& g) { return null_Q_jet(f, g); }
Jet form_01(const Jet& f, const Jet& g) { return null_Qab_jet(0, 1, f, g); }
Jet form_02(const Jet& f, const Jet& g) { return null_Qab_jet(0, 2, f, g); }
Jet form_12(const Jet& f, const Jet& g) { return null_Qab_jet(1, 2, f, g); }

}  // namespace

std::vector<NullCommutatorFit> fit_null_commutators(const SpaceTimeFn& f, const SpaceTimeFn& g,
                                                    const Grid2D& grid, double t, double dt,
                                                    int edge) {
  const Jet jf = sample_jet(f, grid, t, dt);
  const Jet jg = sample_jet(g, grid, t, dt);
  const std::array<FormFn, 4> forms{form_q, form_01, form_02, form_12};
  const std::array<const char*, 4> names{"Q", "Q01", "Q02", "Q12"};

  std::array<ScalarField, 4> basis;
  for (int b = 0; b < 4; ++b) basis[b] = forms[b](jf, jg).d[0];

  std::vector<NullCommutatorFit> out;
  for (GammaOp op : kAllGammaOps) {
    const Jet gf = apply_gamma_jet(op, jf);
    const Jet gg = apply_gamma_jet(op, jg);
    for (int n = 0; n < 4; ++n) {
      const ScalarField target = apply_gamma(op, forms[n](jf, jg)) - forms[n](gf, jg).d[0] -
                                 forms[n](jf, gg).d[0];
      std::array<std::array<double, 4>, 4> M{};
      std::array<double, 4> rhs{};
      for_interior(grid, edge, [&](int, int, std::size_t p) {
        for (int a = 0; a < 4; ++a) {
          rhs[a] += basis[a][p] * target[p];
          for (int b = 0; b < 4; ++b) M[a][b] += basis[a][p] * basis[b][p];
        }
      });
      NullCommutatorFit fit{op, names[n], solve_small(M, rhs), 0.0};
      double rr = 0.0, scale = 0.0;
      for_interior(grid, edge, [&](int, int, std::size_t p) {
        double model = 0.0;
        for (int a = 0; a < 4; ++a) model += fit.lambda[a] * basis[a][p];
        rr += (target[p] - model) * (target[p] - model);
        scale += basis[n][p] * basis[n][p];
      });
      fit.relative_residual = std::sqrt(rr / std::max(scale, std::numeric_limits<double>::min()));
      out.push_back(fit);
    }
  }
  return out;
}

double check_propa12(const Jet& u, double min_cone_gap, int edge) {
  require_levels(u, 2, "check_propa12");
  const Grid2D& g = u.grid();
  const double t = u.t;
  std::vector<ScalarField> gammas;
  for (GammaOp op : kAllGammaOps) gammas.push_back(apply_gamma(op, u));
  const ScalarField& ut = gammas[0];
  const ScalarField& u1 = gammas[1];
  const ScalarField& u2 = gammas[2];

  double worst = 0.0;
  for_interior(g, edge, [&](int i, int j, std::size_t p) {
    const double r = std::hypot(g.x(i), g.x(j));
    if (t - r < min_cone_gap) return;
    const double num = (1.0 + std::abs(t - r)) * (std::abs(ut[p]) + std::abs(u1[p]) + std::abs(u2[p]));
    double den = std::abs(u.d[0][p]);
    for (const ScalarField& gf : gammas) den += std::abs(gf[p]);
    if (den == 0.0) return;  // 0/0 := 0
    worst = std::max(worst, num / den);
  });
  return worst;
}

}  // namespace faddeev
