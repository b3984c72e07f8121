#include "faddeev/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace faddeev {

std::string_view to_string(Region r) {
  switch (r) {
    case Region::All: return "all";
    case Region::Interior: return "int";
    case Region::Exterior: return "ext";
  }
  return "?";
}

Region region_from_string(std::string_view s) {
  if (s == "all") return Region::All;
  if (s == "int" || s == "interior") return Region::Interior;
  if (s == "ext" || s == "exterior") return Region::Exterior;
  throw Error(ErrorKind::InvalidConfig, "unknown region '" + std::string(s) + "'");
}

bool in_region(Region region, double r, double t) noexcept {
  switch (region) {
    case Region::All: return true;
    case Region::Interior: return r <= 1.0 + 0.5 * t;
    case Region::Exterior: return r > 1.0 + 0.5 * t;
  }
  return false;
}

void NormSpec::validate() const {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidConfig, "norm p must be >= 1");
  if (!(q >= 1.0)) throw Error(ErrorKind::InvalidConfig, "norm q must be >= 1");
  if (s < 0 || s > 2) throw Error(ErrorKind::InvalidConfig, "norm s must be 0, 1 or 2");
}

std::string NormSpec::label() const {
  auto fmt = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    std::ostringstream os;
    os << v;
    return os.str();
  };
  return "Lp" + fmt(p) + "_q" + fmt(q) + "_s" + std::to_string(s) + "_" +
         std::string(to_string(region));
}

double norm_pq(const PolarSamples& ps, double p, double q, double t, Region region) {
  const int nt = ps.n_theta;
  const double dtheta = 2.0 * std::numbers::pi / nt;
  const std::size_t nr = ps.n_r();
  double outer = 0.0;
  for (std::size_t k = 0; k < nr; ++k) {
    const double r = ps.radii[k];
    if (!in_region(region, r, t)) continue;
    double inner = 0.0;
    if (std::isinf(q)) {
      for (int j = 0; j < nt; ++j) inner = std::max(inner, std::abs(ps(k, j)));
    } else {
      for (int j = 0; j < nt; ++j) inner += std::pow(std::abs(ps(k, j)), q);
      inner = std::pow(inner * dtheta, 1.0 / q);
    }
    if (std::isinf(p)) {
      outer = std::max(outer, inner);
    } else {
      const double w = (k == 0 || k + 1 == nr) ? 0.5 * ps.dr : ps.dr;
      outer += w * r * std::pow(inner, p);
    }
  }
  return std::isinf(p) ? outer : std::pow(outer, 1.0 / p);
}

double norm_pq(const ScalarField& f, double p, double q, double t, Region region, int n_theta) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "norm_pq: need p, q >= 1");
  require_finite(f, "norm_pq input");
  if (f.max_abs() == 0.0) return 0.0;
  return norm_pq(to_polar(f, n_theta, f.grid().spacing()), p, q, t, region);
}

namespace {

double gamma_norm_rec(const Jet& u, const NormSpec& spec, int depth) {
  double sum = norm_pq(u.d.at(0), spec.p, spec.q, u.t, spec.region);
  if (depth == spec.s) return sum;
  for (GammaOp op : kAllGammaOps) {
    if (consumes_level(op) && u.levels() < 2)
      throw Error(ErrorKind::InvalidArgument, "gamma_norm: jet has too few time levels for s");
    sum += gamma_norm_rec(apply_gamma_jet(op, u), spec, depth + 1);
  }
  return sum;
}

}  // namespace

double gamma_norm(const Jet& u, const NormSpec& spec) {
  spec.validate();
  return gamma_norm_rec(u, spec, 0);
}

double gamma_norm(std::span<const Jet> components, const NormSpec& spec) {
  double sum = 0.0;
  for (const Jet& u : components) sum += gamma_norm(u, spec);
  return sum;
}

double check_hardy(const ScalarField& v, double t, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorKind::InvalidArgument, "check_hardy: rho must be positive");
  require_finite(v, "check_hardy input");
  const Grid2D& g = v.grid();
  for (int j = 0; j < g.nx(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r = std::hypot(g.x(i), g.x(j));
      if (r > t + rho && std::abs(v(i, j)) > 1e-10)
        throw Error(ErrorKind::SupportViolation,
                    "check_hardy: v = " + std::to_string(v(i, j)) + " at |x| = " +
                        std::to_string(r) + " > t + rho");
    }
  if (v.max_abs() == 0.0) return 0.0;
  const ScalarField v1 = dx(v, 1), v2 = dx(v, 2);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g.nx(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r = std::hypot(g.x(i), g.x(j));
      const double w = v(i, j) / (rho + std::abs(t - r));
      num += w * w;
      den += v1(i, j) * v1(i, j) + v2(i, j) * v2(i, j);
    }
  return std::sqrt(num / den);
}

// --- series ------------------------------------------------------------------

void SeriesTable::add(double t, std::vector<double> values) {
  if (values.size() != columns_.size())
    throw Error(ErrorKind::InvalidArgument, "SeriesTable::add: row width does not match schema");
  if (!records_.empty() && !(t > records_.back().t))
    throw Error(ErrorKind::InvalidArgument, "SeriesTable::add: times must increase");
  for (double v : values)
    if (std::isinf(v)) throw Error(ErrorKind::NonFinite, "SeriesTable::add: infinite value");
  records_.push_back({t, std::move(values)});
}

std::size_t SeriesTable::column_index(std::string_view name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end())
    throw Error(ErrorKind::InvalidArgument, "unknown column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> SeriesTable::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(records_.size());
  for (const SeriesRecord& r : records_) out.push_back(r.values[c]);
  return out;
}

std::vector<double> SeriesTable::times() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const SeriesRecord& r : records_) out.push_back(r.t);
  return out;
}

}  // namespace faddeev
