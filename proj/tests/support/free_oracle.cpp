#include "free_oracle.hpp"

#include <cmath>

namespace oracle {

namespace {

using P = std::array<double, 3>;  // (t, x, y)

template <class F>
auto shifted(const F& f, P p, int axis, double s) {
  p[axis] += s;
  return f(p);
}

// Fourth-order first derivative along `axis` of a P -> Vec2 or P -> double.
template <class F>
auto d1(const F& f, const P& p, int axis, double h) {
  auto fp1 = shifted(f, p, axis, h), fm1 = shifted(f, p, axis, -h);
  auto fp2 = shifted(f, p, axis, 2 * h), fm2 = shifted(f, p, axis, -2 * h);
  if constexpr (std::is_same_v<decltype(fp1), double>) {
    return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
  } else {
    Vec2 r;
    for (int a = 0; a < 2; ++a) r[a] = (8.0 * (fp1[a] - fm1[a]) - (fp2[a] - fm2[a])) / (12.0 * h);
    return r;
  }
}

Vec2 d2(const std::function<Vec2(const P&)>& f, const P& p, int axis, double h) {
  const Vec2 f0 = f(p), fp1 = shifted(f, p, axis, h), fm1 = shifted(f, p, axis, -h);
  const Vec2 fp2 = shifted(f, p, axis, 2 * h), fm2 = shifted(f, p, axis, -2 * h);
  Vec2 r;
  for (int a = 0; a < 2; ++a)
    r[a] = (-fp2[a] + 16.0 * fp1[a] - 30.0 * f0[a] + 16.0 * fm1[a] - fm2[a]) / (12.0 * h * h);
  return r;
}

constexpr std::array<double, 3> kEta{1.0, -1.0, -1.0};

}  // namespace

std::vector<TestMap> periodic_maps() {
  std::vector<TestMap> maps;
  maps.push_back({"standing",
                  [](double t, double x, double y) {
                    return Vec2{0.3 * std::sin(x + 0.7 * t) * std::cos(y),
                                0.25 * std::cos(2 * y - 0.5 * t) * std::sin(x)};
                  },
                  [](double t, double x, double y) {
                    return Vec2{0.21 * std::cos(x + 0.7 * t) * std::cos(y),
                                0.125 * std::sin(2 * y - 0.5 * t) * std::sin(x)};
                  }});
  maps.push_back({"oblique",
                  [](double t, double x, double y) {
                    return Vec2{0.2 * std::sin(x - y + t) + 0.1 * std::cos(2 * x + t),
                                0.2 * std::cos(x + 2 * y - 0.3 * t)};
                  },
                  [](double t, double x, double y) {
                    return Vec2{0.2 * std::cos(x - y + t) - 0.1 * std::sin(2 * x + t),
                                0.06 * std::sin(x + 2 * y - 0.3 * t)};
                  }});
  maps.push_back({"breathing",
                  [](double t, double x, double y) {
                    return Vec2{0.3 * std::sin(x) * std::sin(y) * std::cos(1.3 * t),
                                0.24 * std::cos(x) * std::sin(2 * y + t)};
                  },
                  [](double t, double x, double y) {
                    return Vec2{-0.39 * std::sin(x) * std::sin(y) * std::sin(1.3 * t),
                                0.24 * std::cos(x) * std::cos(2 * y + t)};
                  }});
  return maps;
}

Vec2 chart_operator(const MapFn& map, double t, double x, double y, double h, double kappa) {
  const auto n = [&](const P& p) { return map(p[0], p[1], p[2]); };
  const P p{t, x, y};
  const Vec2 v = n(p);
  const double s2 = 1.0 - v[0] * v[0] - v[1] * v[1];
  const double s = std::sqrt(s2);

  std::array<Vec2, 3> dn;  // dn[mu][a] = d_mu n_a
  for (int mu = 0; mu < 3; ++mu) dn[mu] = d1(n, p, mu, h);
  auto dot = [&](int a, int b) {
    double r = 0.0;
    for (int mu = 0; mu < 3; ++mu) r += kEta[mu] * dn[mu][a] * dn[mu][b];
    return r;
  };

  Vec2 box{0.0, 0.0};
  for (int mu = 0; mu < 3; ++mu) {
    const Vec2 dd = d2(n, p, mu, h);
    for (int a = 0; a < 2; ++a) box[a] += kEta[mu] * dd[a];
  }
  const double S1 = (dot(0, 0) + dot(1, 1)) / s2;
  const double S2 = (v[1] * v[1] * dot(0, 0) + v[0] * v[0] * dot(1, 1) - 2.0 * v[0] * v[1] * dot(0, 1)) / s2;

  // W^{mu nu}(q) = J^{mu nu} / s at q, first derivatives by differences.
  auto W = [&](const P& q, int mu, int nu) {
    const Vec2 w = n(q);
    const Vec2 dm = d1(n, q, mu, h), dnu = d1(n, q, nu, h);
    const double J = kEta[mu] * kEta[nu] * (dm[0] * dnu[1] - dnu[0] * dm[1]);
    return J / std::sqrt(1.0 - w[0] * w[0] - w[1] * w[1]);
  };
  std::array<double, 3> D{};  // D^nu = d_mu W^{mu nu}
  for (int nu = 0; nu < 3; ++nu)
    for (int mu = 0; mu < 3; ++mu) {
      if (mu == nu) continue;
      D[nu] += d1([&](const P& q) { return W(q, mu, nu); }, p, mu, h);
    }

  Vec2 T{0.0, 0.0};
  for (int nu = 0; nu < 3; ++nu) {
    const double V1 = (1.0 - v[0] * v[0]) * dn[nu][1] + v[0] * v[1] * dn[nu][0];
    const double V2 = -(1.0 - v[1] * v[1]) * dn[nu][0] - v[0] * v[1] * dn[nu][1];
    T[0] += D[nu] * V1 / s;
    T[1] += D[nu] * V2 / s;
  }
  return {box[0] + (S1 - S2) * v[0] - kappa * T[0], box[1] + (S1 - S2) * v[1] - kappa * T[1]};
}

OracleAccel oracle_accel(const MapFn& map, double t, double x, double y, double h, double kappa) {
  OracleAccel out;
  const double c = 1.0;
  for (int b = 0; b < 2; ++b) {
    auto bent = [&](double sign) {
      return [&, sign](double tt, double xx, double yy) {
        Vec2 v = map(tt, xx, yy);
        v[b] += sign * 0.5 * c * (tt - t) * (tt - t);
        return v;
      };
    };
    const Vec2 ep = chart_operator(bent(1.0), t, x, y, h, kappa);
    const Vec2 em = chart_operator(bent(-1.0), t, x, y, h, kappa);
    for (int a = 0; a < 2; ++a) out.principal[a][b] = (ep[a] - em[a]) / (2.0 * c);
  }
  const Vec2 E = chart_operator(map, t, x, y, h, kappa);
  const auto n = [&](const P& p) { return map(p[0], p[1], p[2]); };
  const Vec2 ntt = d2(n, P{t, x, y}, 0, h);
  const auto& A = out.principal;
  const double det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const double y0 = (A[1][1] * E[0] - A[0][1] * E[1]) / det;
  const double y1 = (-A[1][0] * E[0] + A[0][0] * E[1]) / det;
  out.accel = {ntt[0] - y0, ntt[1] - y1};
  return out;
}

faddeev::FieldState sample_state(const TestMap& map, const faddeev::Grid2D& grid, double t) {
  using faddeev::ScalarField;
  faddeev::FieldState s{grid, ScalarField(grid), ScalarField(grid), ScalarField(grid),
                        ScalarField(grid), t};
  for (int j = 0; j < grid.nx(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const Vec2 v = map.n(t, grid.x(i), grid.x(j));
      const Vec2 w = map.nt(t, grid.x(i), grid.x(j));
      s.n1(i, j) = v[0];
      s.n2(i, j) = v[1];
      s.m1(i, j) = w[0];
      s.m2(i, j) = w[1];
    }
  return s;
}

}  // namespace oracle
