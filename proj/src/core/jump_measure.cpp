#include "core/jump_measure.hpp"

#include <cmath>
#include <utility>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace levylab {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ArgumentError("stability index alpha must lie in (0, 2)");
  }
}

// sin(x) - x without cancellation for small |x|.
double sin_minus_x(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return -x * x2 * (1.0 / 6.0) * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return std::sin(x) - x;
}

// cos(x) - 1 without cancellation.
double cos_minus_one(double x) {
  const double s = std::sin(0.5 * x);
  return -2.0 * s * s;
}

}  // namespace

JumpMeasure::JumpMeasure(MeasureKind kind, double alpha, double coeff,
                         bool symmetric, std::function<double(double)> density)
    : kind_(kind),
      alpha_(alpha),
      coeff_(coeff),
      symmetric_(symmetric),
      density_(std::move(density)) {
  verify_levy_condition();
  if (symmetric_) verify_symmetry();
}

JumpMeasure JumpMeasure::stable(double alpha, double coeff) {
  require_alpha(alpha);
  if (!(coeff > 0.0)) throw ArgumentError("stable coefficient must be positive");
  auto density = [alpha, coeff](double u) {
    return coeff * std::pow(std::abs(u), -1.0 - alpha);
  };
  return JumpMeasure(MeasureKind::stable, alpha, coeff, true, density);
}

JumpMeasure JumpMeasure::log_perturbed_stable(double alpha) {
  require_alpha(alpha);
  auto density = [alpha](double u) {
    const double au = std::abs(u);
    return std::pow(au, -1.0 - alpha) / (std::abs(std::log(au)) + 1.0);
  };
  return JumpMeasure(MeasureKind::log_perturbed_stable, alpha, 0.0, true,
                     density);
}

JumpMeasure JumpMeasure::custom(std::function<double(double)> density,
                                bool symmetric, double alpha_hint) {
  if (!density) throw ArgumentError("custom measure requires a density");
  return JumpMeasure(MeasureKind::custom, alpha_hint, 0.0, symmetric,
                     std::move(density));
}

void JumpMeasure::verify_levy_condition() const {
  // Equivalent to int u^2/(1+u^2) eta < inf: u^2-weighted near 0, plain tail.
  const auto& eta = density_;
  try {
    (void)quad::origin([&](double u) { return u * u * eta(u); }, 1.0);
    (void)quad::origin([&](double u) { return u * u * eta(-u); }, 1.0);
    (void)quad::upper_tail([&](double u) { return eta(u); }, 1.0);
    (void)quad::upper_tail([&](double u) { return eta(-u); }, 1.0);
  } catch (const NumericalError&) {
    throw NumericalError(
        "density violates the Levy integrability condition "
        "(int u^2/(1+u^2) eta(u) du diverges)");
  }
}

void JumpMeasure::verify_symmetry() const {
  // 32 logarithmically spaced probe points across 8 decades.
  for (int i = 0; i < 32; ++i) {
    const double u = std::pow(10.0, -4.0 + 8.0 * i / 31.0);
    const double p = density_(u);
    const double q = density_(-u);
    if (std::abs(p - q) > 1e-12 * (1.0 + std::abs(p))) {
      throw ArgumentError("measure declared symmetric but density is not");
    }
  }
}

double tail_mass(const JumpMeasure& m, double r) {
  if (!(r > 0.0)) throw ArgumentError("tail_mass: r must be positive");
  if (m.kind() == MeasureKind::stable) {
    return m.stable_coeff() * (2.0 / m.alpha()) * std::pow(r, -m.alpha());
  }
  const double pos = quad::upper_tail([&](double u) { return m.density(u); }, r);
  if (m.symmetric()) return 2.0 * pos;
  const double neg = quad::upper_tail([&](double u) { return m.density(-u); }, r);
  return pos + neg;
}

double truncated_moment2(const JumpMeasure& m, double r) {
  if (!(r > 0.0)) throw ArgumentError("truncated_moment2: r must be positive");
  if (m.kind() == MeasureKind::stable) {
    return m.stable_coeff() * 2.0 * std::pow(r, 2.0 - m.alpha()) /
           (2.0 - m.alpha());
  }
  const double pos =
      quad::origin([&](double u) { return u * u * m.density(u); }, r);
  if (m.symmetric()) return 2.0 * pos;
  const double neg =
      quad::origin([&](double u) { return u * u * m.density(-u); }, r);
  return pos + neg;
}

double compensator_drift(const JumpMeasure& m) {
  if (m.symmetric()) return 0.0;  // odd integrand
  auto side = [&](int sign) {
    auto g = [&, sign](double u) {
      return u / (1.0 + u * u) * m.density(sign * u);
    };
    return quad::origin(g, 1.0) + quad::upper_tail(g, 1.0);
  };
  return side(+1) - side(-1);
}

LevyTriplet::LevyTriplet(double drift_, double variance_,
                         std::optional<JumpMeasure> jumps_)
    : drift(drift_), variance(variance_), jumps(std::move(jumps_)) {
  if (!(variance >= 0.0)) {
    throw ArgumentError("triplet variance must be nonnegative");
  }
  if (!std::isfinite(drift)) throw ArgumentError("triplet drift must be finite");
}

std::complex<double> characteristic_exponent(const LevyTriplet& t,
                                             double lambda) {
  std::complex<double> psi(-0.5 * t.variance * lambda * lambda,
                           t.drift * lambda);
  if (!t.jumps || lambda == 0.0) {
    return lambda == 0.0 ? std::complex<double>(0.0, 0.0) : psi;
  }
  const JumpMeasure& m = *t.jumps;
  const double al = std::abs(lambda);

  double re = 0.0;
  double im = 0.0;
  auto add_side = [&](int sign) {
    auto eta = [&, sign](double y) { return m.density(sign * y); };
    // |y| < 1: fully compensated integrand, series-stable near 0.
    re += quad::origin(
        [&](double y) { return cos_minus_one(al * y) * eta(y); }, 1.0);
    // |y| >= 1: cos part = -tail_mass + oscillatory cosine integral.
    const double tail = quad::upper_tail(eta, 1.0);
    re += quad::oscillatory_cos_tail(eta, al, 1.0, 1e-9) - tail;
    if (!m.symmetric()) {
      double s = quad::origin(
          [&](double y) { return sin_minus_x(al * y) * eta(y); }, 1.0);
      s += quad::oscillatory_sin_tail(eta, al, 1.0, 1e-9);
      im += sign * s;
    }
  };
  add_side(+1);
  add_side(-1);
  // psi(-lambda) = conj(psi(lambda)) for real processes.
  if (lambda < 0) im = -im;
  return psi + std::complex<double>(re, im);
}

LevyTriplet scale_triplet(const LevyTriplet& t, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("scale_triplet: epsilon must be positive");
  LevyTriplet out;
  out.variance = t.variance * epsilon * epsilon;
  out.drift = epsilon * t.drift;
  if (!t.jumps) return out;

  const JumpMeasure& m = *t.jumps;
  if (m.kind() == MeasureKind::stable) {
    out.jumps = JumpMeasure::stable(
        m.alpha(), m.stable_coeff() * std::pow(epsilon, m.alpha()));
  } else {
    auto parent = m;  // value copy keeps the closure self-contained
    const double eps = epsilon;
    out.jumps = JumpMeasure::custom(
        [parent, eps](double u) { return parent.density(u / eps) / eps; },
        m.symmetric(), m.alpha());
  }

  if (!m.symmetric() && epsilon != 1.0) {
    // eps*theta - eps int_{|y|<1} y nu(dy) + int_{|y|<1} y nu(d(y/eps))
    // combines into eps * (signed integral of y eta(y) over the annulus
    // between 1 and 1/eps), which is finite for every Levy measure.
    const double lo = std::min(1.0, 1.0 / epsilon);
    const double hi = std::max(1.0, 1.0 / epsilon);
    auto annulus = [&](int sign) {
      return quad::finite(
          [&](double y) { return y * m.density(sign * y); }, lo, hi);
    };
    const double signed_annulus = annulus(+1) - annulus(-1);
    out.drift += epsilon * (epsilon < 1.0 ? signed_annulus : -signed_annulus);
  }
  return out;
}

}  // namespace levylab
