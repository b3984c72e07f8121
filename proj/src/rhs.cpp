#include "faddeev/rhs.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace faddeev {

namespace {

constexpr std::array<double, 3> kEta{1.0, -1.0, -1.0};

/// One grid point's worth of bundle entries.
struct PointJet {
  double n[2];
  double p[2][3];     // lower first derivatives (d_t, d_1, d_2)
  double H[2][3][3];  // lower second derivatives, H[a][0][0] unknown (set to 0)
};

struct PointSystem {
  double A[2][2];
  double R[2];
};

PointJet load_point(const DerivativeBundle& b, std::size_t k) {
  PointJet q{};
  for (int a = 0; a < 2; ++a) {
    q.n[a] = b.n[a][k];
    q.p[a][0] = b.dt[a][k];
    q.p[a][1] = b.d1[a][k];
    q.p[a][2] = b.d2[a][k];
    q.H[a][0][0] = 0.0;
    q.H[a][0][1] = q.H[a][1][0] = b.dt1[a][k];
    q.H[a][0][2] = q.H[a][2][0] = b.dt2[a][k];
    q.H[a][1][1] = b.d11[a][k];
    q.H[a][1][2] = q.H[a][2][1] = b.d12[a][k];
    q.H[a][2][2] = b.d22[a][k];
  }
  return q;
}

// Product-rule expansion of the chart equations
//   box n_a + S n_a - kappa T_a = 0,
//   T_a = (1/s) sum_nu [d_mu G^{mu nu}] V_{a,nu},  G = J / s,  s = sqrt(rho),
// with d_t^2 n isolated on the left; see docs/rhs_expansion.md.
PointSystem assemble_point(const PointJet& q, double kappa) {
  const double n1 = q.n[0], n2 = q.n[1];
  const double rho = 1.0 - n1 * n1 - n2 * n2;
  const double s = std::sqrt(rho);
  const auto& p1 = q.p[0];
  const auto& p2 = q.p[1];

  double P11 = 0.0, P22 = 0.0, P12 = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    P11 += kEta[mu] * p1[mu] * p1[mu];
    P22 += kEta[mu] * p2[mu] * p2[mu];
    P12 += kEta[mu] * p1[mu] * p2[mu];
  }
  const double S = (P11 + P22 - (n2 * n2 * P11 + n1 * n1 * P22 - 2.0 * n1 * n2 * P12)) / rho;

  const double lap1 = q.H[0][1][1] + q.H[0][2][2];
  const double lap2 = q.H[1][1][1] + q.H[1][2][2];

  PointSystem out{{{1.0, 0.0}, {0.0, 1.0}}, {lap1 - S * n1, lap2 - S * n2}};
  if (kappa == 0.0) return out;

  double W[3];
  for (int mu = 0; mu < 3; ++mu) W[mu] = n1 * p1[mu] + n2 * p2[mu];

  // Known part of d_mu G^{mu nu}: box n -> -lap n, H_00 -> 0.
  const double inv_s = 1.0 / s;
  const double inv_s3 = inv_s / rho;
  double D[3];
  for (int nu = 0; nu < 3; ++nu) {
    double divJ = -lap1 * kEta[nu] * p2[nu] + lap2 * kEta[nu] * p1[nu];
    double contract = 0.0;
    for (int mu = 0; mu < 3; ++mu) {
      divJ += kEta[mu] * kEta[nu] * (p1[mu] * q.H[1][mu][nu] - p2[mu] * q.H[0][mu][nu]);
      const double J = kEta[mu] * kEta[nu] * (p1[mu] * p2[nu] - p1[nu] * p2[mu]);
      contract += J * W[mu];
    }
    D[nu] = divJ * inv_s + contract * inv_s3;
  }

  double V[2][3];
  for (int nu = 0; nu < 3; ++nu) {
    V[0][nu] = (1.0 - n1 * n1) * p2[nu] + n1 * n2 * p1[nu];
    V[1][nu] = -(1.0 - n2 * n2) * p1[nu] - n1 * n2 * p2[nu];
  }

  for (int a = 0; a < 2; ++a) {
    double known = 0.0;
    for (int nu = 0; nu < 3; ++nu) known += D[nu] * V[a][nu];
    out.R[a] += kappa * inv_s * known;
  }

  // d_t^2 n enters only through d_0 G^{0i}: (1/s) c_i . a with c_i = (-d_i n2, d_i n1).
  const double coef = kappa / rho;
  for (int i = 1; i <= 2; ++i) {
    const double c[2] = {-p2[i], p1[i]};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.A[a][b] -= coef * V[a][i] * c[b];
  }
  return out;
}

void ensure_shape(ScalarField& f, const Grid2D& g) {
  if (!(f.grid() == g) || f.size() != g.size()) f = ScalarField(g);
}

[[noreturn]] void throw_degenerate(double det, std::size_t k, double floor) {
  throw Error(ErrorKind::PrincipalDegenerate,
              "det A = " + std::to_string(det) + " <= " + std::to_string(floor) +
                  " at point " + std::to_string(k));
}

}  // namespace

void bundle_derivatives_into(const FieldState& state, DerivativeBundle& b) {
  const Grid2D& g = state.grid;
  require_same_grid(g, state.n1.grid(), "bundle n1");
  require_same_grid(g, state.n2.grid(), "bundle n2");
  require_same_grid(g, state.m1.grid(), "bundle m1");
  require_same_grid(g, state.m2.grid(), "bundle m2");
  b.grid = g;
  const int nx = g.nx();
  const double h = g.spacing();
  const ScalarField* ns[2] = {&state.n1, &state.n2};
  const ScalarField* ms[2] = {&state.m1, &state.m2};
  for (int a = 0; a < 2; ++a) {
    require_finite(*ns[a], "state n");
    require_finite(*ms[a], "state m");
    b.n[a] = *ns[a];
    b.dt[a] = *ms[a];
    for (ScalarField* f : {&b.d1[a], &b.d2[a], &b.d11[a], &b.d12[a], &b.d22[a], &b.dt1[a], &b.dt2[a]})
      ensure_shape(*f, g);
    dx_into(ns[a]->values(), nx, h, 1, b.d1[a].values());
    dx_into(ns[a]->values(), nx, h, 2, b.d2[a].values());
    dxx_into(ns[a]->values(), nx, h, 1, b.d11[a].values());
    dxx_into(ns[a]->values(), nx, h, 2, b.d22[a].values());
    dx_into(b.d1[a].values(), nx, h, 2, b.d12[a].values());
    dx_into(ms[a]->values(), nx, h, 1, b.dt1[a].values());
    dx_into(ms[a]->values(), nx, h, 2, b.dt2[a].values());
  }
}

DerivativeBundle bundle_derivatives(const FieldState& state) {
  DerivativeBundle b;
  bundle_derivatives_into(state, b);
  return b;
}

PrincipalSystem assemble(const DerivativeBundle& b, const ModelParams& params) {
  const Grid2D& g = b.grid;
  PrincipalSystem sys{g, ScalarField(g), ScalarField(g), ScalarField(g),
                      ScalarField(g), ScalarField(g), ScalarField(g)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double rr = b.n[0][k] * b.n[0][k] + b.n[1][k] * b.n[1][k];
    if (!(rr <= params.r_max * params.r_max))
      throw Error(ErrorKind::ChartExit, "assemble: point " + std::to_string(k) + " outside chart");
    const PointSystem ps = assemble_point(load_point(b, k), params.kappa);
    sys.a11[k] = ps.A[0][0];
    sys.a12[k] = ps.A[0][1];
    sys.a21[k] = ps.A[1][0];
    sys.a22[k] = ps.A[1][1];
    sys.r1[k] = ps.R[0];
    sys.r2[k] = ps.R[1];
  }
  for (const ScalarField* f : {&sys.a11, &sys.a12, &sys.a21, &sys.a22, &sys.r1, &sys.r2})
    require_finite(*f, "principal system");
  return sys;
}

PrincipalSystem assemble(const FieldState& state, const ModelParams& params) {
  require_chart(state, params.r_max);
  return assemble(bundle_derivatives(state), params);
}

std::array<ScalarField, 2> solve_accel(const PrincipalSystem& sys, double det_floor) {
  const Grid2D& g = sys.grid;
  std::array<ScalarField, 2> out{ScalarField(g), ScalarField(g)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double det = sys.a11[k] * sys.a22[k] - sys.a12[k] * sys.a21[k];
    if (!(det > det_floor)) throw_degenerate(det, k, det_floor);
    out[0][k] = (sys.r1[k] * sys.a22[k] - sys.a12[k] * sys.r2[k]) / det;
    out[1][k] = (sys.a11[k] * sys.r2[k] - sys.r1[k] * sys.a21[k]) / det;
  }
  return out;
}

void AccelerationKernel::evaluate(const FieldState& state, ScalarField& a1, ScalarField& a2) {
  require_chart(state, params_.r_max);
  bundle_derivatives_into(state, bundle_);
  const Grid2D& g = state.grid;
  ensure_shape(a1, g);
  ensure_shape(a2, g);
  double min_det = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PointSystem ps = assemble_point(load_point(bundle_, k), params_.kappa);
    const double det = ps.A[0][0] * ps.A[1][1] - ps.A[0][1] * ps.A[1][0];
    if (!(det > params_.det_floor)) throw_degenerate(det, k, params_.det_floor);
    min_det = std::min(min_det, det);
    a1[k] = (ps.R[0] * ps.A[1][1] - ps.A[0][1] * ps.R[1]) / det;
    a2[k] = (ps.A[0][0] * ps.R[1] - ps.R[0] * ps.A[1][0]) / det;
  }
  last_min_det_ = min_det;
  require_finite(a1, "acceleration");
  require_finite(a2, "acceleration");
}

std::array<ScalarField, 2> acceleration(const FieldState& state, const ModelParams& params) {
  AccelerationKernel kernel(params);
  std::array<ScalarField, 2> out;
  kernel.evaluate(state, out[0], out[1]);
  return out;
}

// --- 3-vector residual ----------------------------------------------------

namespace {

struct SliceData {
  std::array<ScalarField, 3> n;
  std::array<std::array<ScalarField, 3>, 3> dn;  // dn[mu][c], lower index
};

SliceData slice_data(const FieldState& s, double r_max) {
  SphereMap map = reconstruct_sphere(s, r_max);
  SliceData d;
  d.n = map.n;
  d.dn[0] = {s.m1, s.m2, n3_rate(s)};
  for (int c = 0; c < 3; ++c) {
    d.dn[1][c] = dx(d.n[c], 1);
    d.dn[2][c] = dx(d.n[c], 2);
  }
  return d;
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Raised F^{mu nu} = eta_mu eta_nu n . (d_mu n x d_nu n) at every point.
ScalarField field_strength(const SliceData& d, int mu, int nu) {
  const Grid2D& g = d.n[0].grid();
  ScalarField out(g);
  if (mu == nu) return out;
  const double sign = kEta[mu] * kEta[nu];
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::array<double, 3> a{d.dn[mu][0][k], d.dn[mu][1][k], d.dn[mu][2][k]};
    const std::array<double, 3> b{d.dn[nu][0][k], d.dn[nu][1][k], d.dn[nu][2][k]};
    const auto c = cross(a, b);
    out[k] = sign * (d.n[0][k] * c[0] + d.n[1][k] * c[1] + d.n[2][k] * c[2]);
  }
  return out;
}

}  // namespace

ScalarField residual_faddeev3(const FieldState& prev, const FieldState& cur, const FieldState& next,
                              const ModelParams& params) {
  require_same_grid(prev.grid, cur.grid, "residual_faddeev3");
  require_same_grid(next.grid, cur.grid, "residual_faddeev3");
  const double dt = cur.t - prev.t;
  if (!(dt > 0.0) || std::abs((next.t - cur.t) - dt) > 1e-9 * dt)
    throw Error(ErrorKind::InvalidArgument, "residual_faddeev3: states must be equally spaced in t");

  const SliceData sp = slice_data(prev, params.r_max);
  const SliceData sc = slice_data(cur, params.r_max);
  const SliceData sn = slice_data(next, params.r_max);
  const Grid2D& g = cur.grid;

  // D^nu = d_t F^{0 nu} + d_i F^{i nu}
  std::array<ScalarField, 3> D;
  for (int nu = 0; nu < 3; ++nu) {
    D[nu] = field_strength(sn, 0, nu);
    D[nu] -= field_strength(sp, 0, nu);
    D[nu] *= 1.0 / (2.0 * dt);
    D[nu] += dx(field_strength(sc, 1, nu), 1);
    D[nu] += dx(field_strength(sc, 2, nu), 2);
  }

  std::array<ScalarField, 3> box;
  for (int c = 0; c < 3; ++c) {
    box[c] = sn.n[c];
    box[c].axpy(-2.0, sc.n[c]);
    box[c] += sp.n[c];
    box[c] *= 1.0 / (dt * dt);
    box[c] -= laplacian(sc.n[c]);
  }

  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::array<double, 3> n{sc.n[0][k], sc.n[1][k], sc.n[2][k]};
    double Pn = 0.0;
    std::array<double, 3> quartic{0.0, 0.0, 0.0};
    for (int mu = 0; mu < 3; ++mu) {
      const std::array<double, 3> dmu{sc.dn[mu][0][k], sc.dn[mu][1][k], sc.dn[mu][2][k]};
      Pn += kEta[mu] * (dmu[0] * dmu[0] + dmu[1] * dmu[1] + dmu[2] * dmu[2]);
      const auto w = cross(dmu, n);
      for (int c = 0; c < 3; ++c) quartic[c] += D[mu][k] * w[c];
    }
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double r = box[c][k] + Pn * n[c] - params.kappa * quartic[c];
      sq += r * r;
    }
    out[k] = std::sqrt(sq);
  }
  return out;
}

}  // namespace faddeev
