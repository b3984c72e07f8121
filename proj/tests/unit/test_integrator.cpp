#include <doctest.h>

#include <cmath>

#include "faddeev/diagnostics.hpp"
#include "faddeev/integrator.hpp"
#include "faddeev/linear_wave.hpp"
#include "test_util.hpp"

using namespace faddeev;
using testutil::max_diff;

namespace {

RunConfig short_run(int nx, double t_final, double eps) {
  RunConfig c;
  c.nx = nx;
  c.t_final = t_final;
  c.data.epsilon = eps;
  c.diag_stride = 4;
  return c;
}

}  // namespace

TEST_CASE("wrap guard and config validation") {
  CHECK(wrap_guard_half_width(10.0, 40.0) == doctest::Approx(56.0));
  RunConfig c = short_run(128, 4.0, 0.05);
  CHECK(c.resolved_half_width() == doctest::Approx(c.data.support_radius() + 1.1 * 4.0 + 2.0));
  CHECK_NOTHROW(c.validate());
  c.half_width = 20.0;
  CHECK(testutil::thrown_kind([&] { c.validate(); }) == ErrorKind::InvalidConfig);
  c.enforce_wrap_guard = false;
  CHECK_NOTHROW(c.validate());
  c.cfl = 1.5;
  CHECK(testutil::thrown_kind([&] { c.validate(); }) == ErrorKind::InvalidConfig);
  c = short_run(127, 4.0, 0.05);
  try {
    c.validate();
    FAIL("odd nx accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("grid.nx") != std::string::npos);
  }
}

TEST_CASE("step: zero state stays zero") {
  const Grid2D g(32, 4.0);
  const FieldState s = step(FieldState::zero(g), 0.1);
  CHECK(s.n1.max_abs() == 0.0);
  CHECK(s.m2.max_abs() == 0.0);
  CHECK(s.t == doctest::Approx(0.1));
}

TEST_CASE("step: small data follows the spectral linear step") {
  RunConfig c = short_run(128, 4.0, 1e-4);
  const Grid2D g = c.grid();
  const FieldState s = make_initial_state(c.data, g);
  const double dt = 0.5 * g.spacing();
  const FieldState a = step(s, dt);
  const ScalarField lin = evolve_homogeneous_state(s.n1, s.m1, dt).u;
  // O(eps^3) nonlinearity, O(dt^5) local RK4 error, O(h^4) stencil error.
  CHECK(max_diff(a.n1, lin) <= 1e-10);
}

TEST_CASE("step: time reversal") {
  RunConfig c = short_run(128, 4.0, 0.05);
  c.data.velocity = {0.5, -0.3};
  const Grid2D g = c.grid();
  const FieldState s = make_initial_state(c.data, g);
  std::array<double, 2> err{};
  for (int level = 0; level < 2; ++level) {
    const double dt = 0.5 * g.spacing() / (1 << level);
    FieldState f = step(s, dt);
    f.m1 *= -1.0;
    f.m2 *= -1.0;
    const FieldState back = step(f, dt);
    err[level] = std::max(max_diff(back.n1, s.n1), max_diff(back.n2, s.n2));
  }
  CHECK(err[0] < 1e-7);
  CHECK(testutil::order(err[0], err[1]) >= 4.5);
}

TEST_CASE("stepper leaves the state untouched on failure") {
  const Grid2D g(32, 4.0);
  FieldState s = FieldState::zero(g);
  s.n1(5, 5) = 0.85;
  s.m1(5, 5) = 50.0;
  const FieldState copy = s;
  Stepper st;
  CHECK(testutil::thrown_kind([&] { st.advance(s, 0.1); }).has_value());
  CHECK(max_diff(s.n1, copy.n1) == 0.0);
  CHECK(max_diff(s.m1, copy.m1) == 0.0);
  CHECK(s.t == copy.t);
}

TEST_CASE("run: zero data") {
  const Trajectory tr = run(short_run(64, 3.0, 0.0));
  CHECK(tr.status == RunStatus::Completed);
  CHECK(tr.snapshots.front().t == 0.0);
  CHECK(tr.snapshots.back().t == doctest::Approx(3.0));
  for (const std::string& col : tr.series.columns()) {
    if (col == "chart_margin") continue;
    for (double v : tr.series.column(col))
      if (!(col == "residual_f3" && std::isnan(v))) CHECK(v == 0.0);
  }
  for (double v : tr.series.column("chart_margin")) CHECK(v == doctest::Approx(0.81));
}

TEST_CASE("run: statuses") {
  RunConfig c = short_run(64, 6.0, 0.3);
  c.data.sigma = 3.0;
  c.data.weights = {1.0, 1.0};
  c.data.velocity = {1.0, 1.0};
  c.model.r_max = 0.5;
  const Trajectory tr = run(c);
  CHECK(tr.status == RunStatus::ChartExit);
  CHECK(tr.snapshots.back().t < 6.0);

  // With the opposite-sign quartic term steep static data lose hyperbolicity.
  const Grid2D g(64, M_PI);
  FieldState steep = FieldState::zero(g);
  for (int j = 0; j < g.nx(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      steep.n1(i, j) = 0.3 * std::sin(4 * g.x(i));
      steep.n2(i, j) = 0.3 * std::sin(4 * g.x(j));
    }
  RunConfig d = short_run(64, 1.0, 0.0);
  d.model.kappa = -1.0;
  const Trajectory td = run(d, steep);
  CHECK(td.status == RunStatus::PrincipalDegenerate);
  CHECK(td.message.find("PrincipalDegenerate") != std::string::npos);
  d.model.kappa = 1.0;
  CHECK(run(d, steep).status != RunStatus::PrincipalDegenerate);
}

TEST_CASE("run: rows, snapshots and strides") {
  RunConfig c = short_run(64, 4.0, 0.05);
  c.snapshot_stride = 3;
  const Trajectory tr = run(c);
  REQUIRE(tr.status == RunStatus::Completed);
  const auto times = tr.series.times();
  for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
  CHECK(times.back() == doctest::Approx(4.0));
  CHECK(tr.steps * tr.dt == doctest::Approx(4.0));
  CHECK(tr.dt <= c.cfl * c.grid().spacing() * (1 + 1e-12));
  for (std::size_t i = 1; i < tr.snapshots.size(); ++i) CHECK(tr.snapshots[i].t > tr.snapshots[i - 1].t);
  CHECK(tr.snapshots.size() == 2 + (tr.steps - 1) / 3);
}

TEST_CASE("run: self-convergence, scaling, energy and finite speed") {
  std::array<FieldState, 3> fin;
  for (int level = 0; level < 3; ++level) {
    const Trajectory tr = run(short_run(128 << level, 2.0, 0.05));
    REQUIRE(tr.status == RunStatus::Completed);
    fin[level] = tr.snapshots.back();
  }
  auto coarse_diff = [](const FieldState& a, const FieldState& b) {
    double m = 0.0;
    for (int j = 0; j < a.grid.nx(); ++j)
      for (int i = 0; i < a.grid.nx(); ++i) m = std::max(m, std::abs(a.n1(i, j) - b.n1(2 * i, 2 * j)));
    return m;
  };
  const double e0 = coarse_diff(fin[0], fin[1]), e1 = coarse_diff(fin[1], fin[2]);
  CHECK(testutil::order(e0, e1) >= 3.5);

  const Trajectory a = run(short_run(128, 6.0, 0.05));
  const Trajectory b = run(short_run(128, 6.0, 0.025));
  const auto la = a.series.column("Linf_s0"), lb = b.series.column("Linf_s0");
  for (std::size_t i = 0; i < la.size(); ++i) CHECK(la[i] / lb[i] == doctest::Approx(2.0).epsilon(0.05));

  const auto en = a.series.column("energy");
  for (double e : en) CHECK(std::abs(e - en.front()) <= 1e-5 * en.front());

  const RunConfig c = short_run(128, 6.0, 0.05);
  const FieldState& last = a.snapshots.back();
  const double R = c.data.support_radius() + last.t + 1.0;
  for (int j = 0; j < last.grid.nx(); ++j)
    for (int i = 0; i < last.grid.nx(); ++i)
      if (std::hypot(last.grid.x(i), last.grid.x(j)) > R) {
        CHECK(std::abs(last.n1(i, j)) <= 1e-10);
        CHECK(std::abs(last.n2(i, j)) <= 1e-10);
      }
}

TEST_CASE("linearization consistency at tiny amplitude") {
  const RunConfig c = short_run(256, 10.0, 1e-4);
  const Trajectory tr = run(c);
  REQUIRE(tr.status == RunStatus::Completed);
  const FieldState s0 = make_initial_state(c.data, c.grid());
  const ScalarField lin = evolve_homogeneous(s0.n1, s0.m1, 10.0);
  CHECK(max_diff(tr.snapshots.back().n1, lin) <= 1e-8);
}
