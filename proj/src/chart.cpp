#include "faddeev/chart.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace faddeev {

namespace {

struct Bump {
  Point2 c;
  double amp_n1 = 0.0, amp_n2 = 0.0;
};

// Maps the generator output to [0, 1) without relying on the
// implementation-defined real distributions.
double unit_uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::vector<Bump> noise_bumps(const InitialDataSpec& spec) {
  std::vector<Bump> out;
  if (spec.noise == 0.0) return out;
  std::mt19937_64 rng(spec.seed);
  for (int k = 0; k < 4; ++k) {
    Bump b;
    const double radius = 2.0 * spec.sigma * unit_uniform(rng);
    const double angle = 2.0 * 3.14159265358979323846 * unit_uniform(rng);
    b.c = {radius * std::cos(angle), radius * std::sin(angle)};
    b.amp_n1 = spec.noise * (2.0 * unit_uniform(rng) - 1.0);
    b.amp_n2 = spec.noise * (2.0 * unit_uniform(rng) - 1.0);
    out.push_back(b);
  }
  return out;
}

}  // namespace

FieldState FieldState::zero(const Grid2D& grid, double t) {
  return FieldState{grid, ScalarField(grid), ScalarField(grid), ScalarField(grid),
                    ScalarField(grid), t};
}

void InitialDataSpec::validate(const Grid2D& grid) const {
  auto bad = [](const std::string& key, const std::string& msg) {
    throw Error(ErrorKind::InvalidConfig, key + ": " + msg);
  };
  if (!(epsilon >= 0.0 && epsilon <= 0.3)) bad("data.epsilon", "must lie in [0, 0.3]");
  if (!(sigma > 2.0 * grid.spacing())) bad("data.sigma", "must exceed 2h");
  for (double w : weights)
    if (!(std::abs(w) <= 1.0)) bad("data.weights", "entries must satisfy |w| <= 1");
  for (double v : velocity)
    if (!std::isfinite(v)) bad("data.velocity", "must be finite");
  for (const Point2& c : centers)
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) bad("data.centers", "must be finite");
  if (!(noise >= 0.0 && noise <= 1.0)) bad("data.noise", "must lie in [0, 1]");
}

double InitialDataSpec::support_radius() const {
  const double reach = sigma * std::sqrt(-2.0 * std::log(kSupportThreshold));
  double far = 0.0;
  for (const Point2& c : centers) far = std::max(far, std::hypot(c.x, c.y));
  for (const Bump& b : noise_bumps(*this)) far = std::max(far, std::hypot(b.c.x, b.c.y));
  return far + reach;
}

FieldState make_initial_state(const InitialDataSpec& spec, const Grid2D& grid, double r_max) {
  spec.validate(grid);
  FieldState s = FieldState::zero(grid, 0.0);
  const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
  auto gauss = [&](Point2 c, double x, double y) {
    const double dx = x - c.x, dy = y - c.y;
    return std::exp(-(dx * dx + dy * dy) * inv2s2);
  };
  const auto extra = noise_bumps(spec);
  for (int j = 0; j < grid.nx(); ++j) {
    const double y = grid.x(j);
    for (int i = 0; i < grid.nx(); ++i) {
      const double x = grid.x(i);
      const double g1 = gauss(spec.centers[0], x, y);
      const double g2 = gauss(spec.centers[1], x, y);
      double p1 = spec.weights[0] * g1;
      double p2 = spec.weights[1] * g2;
      for (const Bump& b : extra) {
        const double g = gauss(b.c, x, y);
        p1 += b.amp_n1 * g;
        p2 += b.amp_n2 * g;
      }
      s.n1(i, j) = spec.epsilon * p1;
      s.n2(i, j) = spec.epsilon * p2;
      s.m1(i, j) = spec.epsilon * spec.velocity[0] * g1;
      s.m2(i, j) = spec.epsilon * spec.velocity[1] * g2;
    }
  }
  if (chart_margin(s, r_max) < 0.0)
    throw Error(ErrorKind::AmplitudeTooLarge,
                "initial data leaves the chart (max n1^2+n2^2 > r_max^2)");
  return s;
}

double chart_margin(const FieldState& state, double r_max) {
  double peak = 0.0;
  for (std::size_t k = 0; k < state.n1.size(); ++k)
    peak = std::max(peak, state.n1[k] * state.n1[k] + state.n2[k] * state.n2[k]);
  return r_max * r_max - peak;
}

void require_chart(const FieldState& state, double r_max) {
  const double margin = chart_margin(state, r_max);
  if (!(margin >= 0.0))
    throw Error(ErrorKind::ChartExit,
                "n1^2 + n2^2 exceeds r_max^2 (margin " + std::to_string(margin) + ")");
}

SphereMap reconstruct_sphere(const FieldState& state, double r_max) {
  require_chart(state, r_max);
  SphereMap out{state.grid, {state.n1, state.n2, ScalarField(state.grid)}};
  for (std::size_t k = 0; k < state.n1.size(); ++k)
    out.n[2][k] = std::sqrt(1.0 - state.n1[k] * state.n1[k] - state.n2[k] * state.n2[k]);
  return out;
}

ScalarField n3_rate(const FieldState& state) {
  ScalarField out(state.grid);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double n3 = std::sqrt(1.0 - state.n1[k] * state.n1[k] - state.n2[k] * state.n2[k]);
    out[k] = -(state.n1[k] * state.m1[k] + state.n2[k] * state.m2[k]) / n3;
  }
  return out;
}

}  // namespace faddeev
