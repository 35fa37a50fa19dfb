#include "core/dynamics.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace levylab {

Potential::Potential(Kind kind, std::vector<double> coeffs)
    : kind_(kind), coeffs_(std::move(coeffs)) {}

Potential Potential::quadratic() { return Potential(Kind::quadratic, {0.0, 1.0}); }

Potential Potential::polynomial(std::vector<double> du_coeffs) {
  if (du_coeffs.empty()) du_coeffs.push_back(0.0);
  return Potential(Kind::polynomial, std::move(du_coeffs));
}

double Potential::du(double x) const {
  if (kind_ == Kind::quadratic) return x;
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc = acc * x + coeffs_[k];
  }
  return acc;
}

double Potential::curvature_at_zero() const {
  return coeffs_.size() > 1 ? coeffs_[1] : 0.0;
}

double Potential::relaxation_time() const {
  const double c = curvature_at_zero();
  return c > 0.0 ? 1.0 / c : 1.0;
}

void Potential::validate_single_well(const Domain& dom) const {
  if (std::abs(du(0.0)) > 1e-12) {
    throw ArgumentError("potential: U'(0) must vanish");
  }
  const int n = 1024;
  for (int i = 0; i < n; ++i) {
    const double x = -dom.b + (dom.a + dom.b) * (i + 0.5) / n;
    if (std::abs(x) < 1e-9) continue;
    if (!(x * du(x) > 0.0)) {
      throw ArgumentError(
          "potential: x U'(x) > 0 fails inside the domain (not a single "
          "attracting well)");
    }
  }
}

Domain::Domain(double a_, double b_, double delta_) : a(a_), b(b_), delta(delta_) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ArgumentError("domain: barriers a and b must be positive");
  }
  if (!(delta >= 0.0) || !(delta < std::min(a, b))) {
    throw ArgumentError("domain: delta must satisfy 0 <= delta < min(a, b)");
  }
}

namespace {

double rk4_step(const Potential& u, double y, double dt) {
  const double k1 = -u.du(y);
  const double k2 = -u.du(y + 0.5 * dt * k1);
  const double k3 = -u.du(y + 0.5 * dt * k2);
  const double k4 = -u.du(y + dt * k3);
  return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<FlowPoint> deterministic_flow(const Potential& u, double x,
                                          double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) {
    throw ArgumentError("deterministic_flow: t_end and dt must be positive");
  }
  std::vector<FlowPoint> out;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  out.reserve(steps + 1);
  double y = x;
  out.push_back({0.0, y});
  for (std::size_t k = 1; k <= steps; ++k) {
    y = rk4_step(u, y, dt);
    out.push_back({static_cast<double>(k) * dt, y});
  }
  return out;
}

bool in_gdelta(const Potential& u, const Domain& dom, double x) {
  if (!dom.contains(x)) return false;
  const double dt = 1e-3;
  const double t_end = 50.0 * u.relaxation_time();
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  double y = x;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double dist = std::min(std::abs(y - dom.a), std::abs(y + dom.b));
    if (dist < dom.delta) return false;
    y = rk4_step(u, y, dt);
  }
  return true;
}

ExitOutcome simulate_exit_path(const Potential& u, const NoiseSampler& s,
                               const Domain& dom, double x0, double dt,
                               double t_cap, RngStream& rng) {
  if (!(dt > 0.0)) throw ArgumentError("simulate_exit_path: dt must be positive");
  if (!(t_cap >= dt)) throw ArgumentError("simulate_exit_path: t_cap must be >= dt");
  if (!dom.contains(x0)) {
    return {true, 0.0, x0 > dom.a ? ExitSide::right : ExitSide::left, 0};
  }
  double x = x0;
  std::uint64_t k = 0;
  while (true) {
    ++k;
    x += -u.du(x) * dt + s.increment(dt, rng);
    if (!std::isfinite(x)) {
      throw NumericalError("simulate_exit_path: state overflowed");
    }
    const double t = static_cast<double>(k) * dt;
    if (!dom.contains(x)) {
      return {true, t, x > dom.a ? ExitSide::right : ExitSide::left, k};
    }
    if (t >= t_cap) {
      return {false, t_cap, ExitSide::right, k};
    }
  }
}

}  // namespace levylab
