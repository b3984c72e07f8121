#include <doctest.h>

#include <cmath>

#include "faddeev/checks.hpp"
#include "faddeev/gamma_null.hpp"
#include "test_util.hpp"

using namespace faddeev;
using testutil::max_diff;

namespace {

// Closed-form Gamma f at level 0 from the analytic gradient.
ScalarField exact_gamma(GammaOp op, const AnalyticField& f, const Grid2D& g, double t) {
  return ScalarField::sample(g, [&](double x, double y) {
    const auto d = f.gradient(t, x, y);
    switch (op) {
      case GammaOp::Dt: return d[0];
      case GammaOp::D1: return d[1];
      case GammaOp::D2: return d[2];
      case GammaOp::Omega12: return x * d[2] - y * d[1];
      case GammaOp::L0: return t * d[0] + x * d[1] + y * d[2];
      case GammaOp::L1: return x * d[0] + t * d[1];
      case GammaOp::L2: return y * d[0] + t * d[2];
    }
    return 0.0;
  });
}

double gamma_error(GammaOp op, int nx) {
  const AnalyticField f = builtin::packet_f();
  const Grid2D g(nx, 16.0);
  const double t = 3.0;
  const Jet u = sample_jet(f.value, g, t, 0.5 * g.spacing());
  return max_diff(apply_gamma(op, u), exact_gamma(op, f, g, t));
}

}  // namespace

TEST_CASE("jets from slices") {
  const Grid2D g(16, 2.0);
  // Cubic in t: every level from five slices is exact.
  const SpaceTimeFn f = [](double t, double x, double) { return 1.0 + 2.0 * t - t * t + 0.5 * t * t * t + x; };
  const Jet u = sample_jet(f, g, 0.7, 0.1);
  REQUIRE(u.levels() == 5);
  CHECK(u.d[1][3] == doctest::Approx(2.0 - 1.4 + 1.5 * 0.49).epsilon(1e-10));
  CHECK(u.d[2][3] == doctest::Approx(-2.0 + 3.0 * 0.7).epsilon(1e-9));
  CHECK(u.d[3][3] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(std::abs(u.d[4][3]) < 1e-4);
  CHECK(sample_jet(f, g, 0.7, 0.1, 3).levels() == 3);
  CHECK(testutil::thrown_kind([&] { sample_jet(f, g, 0.7, 0.1, 4); }) == ErrorKind::InvalidArgument);
  CHECK(testutil::thrown_kind([&] { sample_jet(f, g, 0.7, 0.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("jet algebra") {
  const Grid2D g(32, 4.0);
  const SpaceTimeFn a = [](double t, double x, double y) { return std::sin(t) * std::cos(x * M_PI / 4) + y * 0; };
  const SpaceTimeFn b = [](double t, double, double y) { return std::cos(2 * t) * std::sin(y * M_PI / 4); };
  const SpaceTimeFn ab = [&](double t, double x, double y) { return a(t, x, y) * b(t, x, y); };
  const double dt = 1e-2;
  const Jet p = jet_mul(sample_jet(a, g, 0.4, dt), sample_jet(b, g, 0.4, dt));
  const Jet q = sample_jet(ab, g, 0.4, dt);
  CHECK(max_diff(p.d[0], q.d[0]) < 1e-14);
  CHECK(max_diff(p.d[1], q.d[1]) < 1e-7);
  CHECK(max_diff(p.d[2], q.d[2]) < 1e-6);
  const Jet s = jet_axpy(2.0, q, q);
  CHECK(max_diff(s.d[1], 3.0 * q.d[1]) < 1e-12);
  CHECK(jet_dt(q).levels() == q.levels() - 1);
}

TEST_CASE("vector fields match closed forms at fourth order") {
  for (GammaOp op : kAllGammaOps) {
    CAPTURE(to_string(op));
    const double e0 = gamma_error(op, 128), e1 = gamma_error(op, 256);
    CHECK(e1 < 1e-3);
    CHECK(testutil::order(e0, e1) >= 3.5);
  }
}

TEST_CASE("level bookkeeping") {
  const Grid2D g(32, 4.0);
  const Jet u = sample_jet(builtin::packet_f().value, g, 1.0, 0.1);
  CHECK(apply_gamma_jet(GammaOp::Omega12, u).levels() == 5);
  CHECK(apply_gamma_jet(GammaOp::L0, u).levels() == 4);
  CHECK(consumes_level(GammaOp::L1));
  CHECK_FALSE(consumes_level(GammaOp::D2));
  Jet one;
  one.d = {u.d[0]};
  CHECK(testutil::thrown_kind([&] { apply_gamma(GammaOp::L0, one); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("null forms") {
  const AnalyticField f = builtin::packet_f(), gg = builtin::packet_g();
  const Grid2D g(256, 16.0);
  const double t = 2.0, dt = 0.5 * g.spacing();
  const Jet jf = sample_jet(f.value, g, t, dt), jg = sample_jet(gg.value, g, t, dt);
  const ScalarField q = null_Q(jf, jg);
  const ScalarField q12 = null_Qab(1, 2, jf, jg);
  const ScalarField q01 = null_Qab(0, 1, jf, jg);
  const ScalarField eq = ScalarField::sample(g, [&](double x, double y) {
    const auto a = f.gradient(t, x, y), b = gg.gradient(t, x, y);
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
  });
  const ScalarField e12 = ScalarField::sample(g, [&](double x, double y) {
    const auto a = f.gradient(t, x, y), b = gg.gradient(t, x, y);
    return a[1] * b[2] - a[2] * b[1];
  });
  const ScalarField e01 = ScalarField::sample(g, [&](double x, double y) {
    const auto a = f.gradient(t, x, y), b = gg.gradient(t, x, y);
    return a[0] * b[1] - a[1] * b[0];
  });
  CHECK(max_diff(q, eq) < 1e-4 * eq.max_abs());
  CHECK(max_diff(q12, e12) < 1e-4 * e12.max_abs());
  CHECK(max_diff(q01, e01) < 1e-4 * e01.max_abs());
  // Antisymmetry and the jet forms agree with the point forms.
  CHECK(max_diff(null_Qab(2, 1, jf, jg), -1.0 * q12) == 0.0);
  CHECK(null_Qab(1, 1, jf, jg).max_abs() == 0.0);
  CHECK(max_diff(null_Q_jet(jf, jg).d[0], q) < 1e-12);
  CHECK(testutil::thrown_kind([&] { null_Qab(0, 3, jf, jg); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("null form identity through the vector fields") {
  const AnalyticField f = builtin::packet_f(), gg = builtin::packet_g();
  const Grid2D g0(128, 16.0), g1(256, 16.0);
  const Lemd11Residual r0 = check_lemd11_identity(f, gg, g0, 10.0, 0.5 * g0.spacing());
  const Lemd11Residual r1 = check_lemd11_identity(f, gg, g1, 10.0, 0.5 * g1.spacing());
  CHECK(r1.max() < r0.max());
  CHECK(r0.max() / r1.max() >= 8.0);
  CHECK(r1.max() < 1e-4);
  CHECK(testutil::thrown_kind([&] { check_lemd11_identity(f, gg, g0, 0.5, 0.01); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("commutators with the wave operator") {
  const Grid2D g(128, 16.0);
  const auto rows = commutator_table(builtin::packet_f().value, g, 3.0, 0.5 * g.spacing());
  REQUIRE(!rows.empty());
  for (const CommutatorRow& r : rows) {
    CAPTURE(r.name);
    CHECK(std::isfinite(r.residual));
    CHECK(r.reference > 0.0);
    if (r.name.find("L0") == std::string::npos) CHECK(r.relative() < 1e-10);
    else CHECK(r.relative() < 1e-2);
  }
}

TEST_CASE("derivative bound inside the cone") {
  const Grid2D g(128, 16.0);
  const Jet zero = sample_jet([](double, double, double) { return 0.0; }, g, 5.0, 0.1);
  CHECK(check_propa12(zero, 1.0) == 0.0);
  const Jet u = sample_jet(builtin::packet_f().value, g, 5.0, 0.5 * g.spacing());
  const double r = check_propa12(u, 0.5);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
  CHECK(r <= 2.0);
}
