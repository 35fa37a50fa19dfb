#include "core/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace levylab {

namespace {

constexpr std::size_t kTailTableCells = 2048;
constexpr double kTailResidualFraction = 1e-12;
constexpr int kBisectionLimit = 200;

double cms_standard_draw(double alpha, RngStream& rng) {
  // Polar/trigonometric exact method for the standard symmetric stable law
  // with characteristic function exp(-|lambda|^alpha).
  const double theta = M_PI * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double s = std::sin(alpha * theta) /
                   std::pow(std::cos(theta), 1.0 / alpha);
  const double tilt =
      std::pow(std::cos((1.0 - alpha) * theta) / w, (1.0 - alpha) / alpha);
  return s * tilt;
}

// Signed integral of z * eta(z) over the annulus between radii lo < hi.
double signed_annulus_moment(const JumpMeasure& m, double lo, double hi) {
  auto one_side = [&](int sign) {
    return quad::finite([&](double z) { return z * m.density(sign * z); }, lo,
                        hi);
  };
  return one_side(+1) - one_side(-1);
}

}  // namespace

double stable_scale_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ArgumentError("stable_scale_constant: alpha must lie in (0, 2)");
  }
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
  }
  auto pow_density = [alpha](double v) { return std::pow(v, -1.0 - alpha); };
  const double near = quad::origin(
      [&](double v) {
        const double s = std::sin(0.5 * v);
        return 2.0 * s * s * pow_density(v);
      },
      1.0);
  // int_1^inf (1 - cos v) v^{-1-a} dv = 1/alpha - int_1^inf cos(v) v^{-1-a} dv
  const double far =
      1.0 / alpha - quad::oscillatory_cos_tail(pow_density, 1.0, 1.0, 1e-10);
  const double c = 2.0 * (near + far);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(alpha, c);
  return c;
}

// ---------------------------------------------------------------------------
// TailSampler

double TailSampler::SideTable::interp_tail(double rq) const {
  const std::size_t m = r.size() - 1;
  if (rq <= r.front()) return tail.front();
  if (rq >= r.back()) return tail.back();
  const auto it = std::upper_bound(r.begin(), r.end(), rq);
  const std::size_t j = static_cast<std::size_t>(it - r.begin()) - 1;
  const double cell_mass = tail[j] - tail[j + 1];
  if (cell_mass <= 0.0) return tail[j];
  double partial;
  const double dj = density[j];
  const double dj1 = density[j + 1];
  if (dj > 0.0 && dj1 > 0.0) {
    // local power-law interpolant of the density, integrated in closed form
    const double width = std::log(r[j + 1] / r[j]);
    const double p = std::log(dj1 / dj) / width;
    const double q1 = p + 1.0;
    double full, part;
    if (std::abs(q1) < 1e-9) {
      full = dj * r[j] * width;
      part = dj * r[j] * std::log(rq / r[j]);
    } else {
      full = dj * r[j] / q1 * (std::pow(r[j + 1] / r[j], q1) - 1.0);
      part = dj * r[j] / q1 * (std::pow(rq / r[j], q1) - 1.0);
    }
    partial = full > 0.0 ? cell_mass * part / full : 0.0;
  } else {
    partial = cell_mass * (rq - r[j]) / (r[j + 1] - r[j]);
  }
  return tail[j] - partial;
}

TailSampler::TailSampler(const JumpMeasure& m, double delta_cut)
    : delta_(delta_cut), symmetric_(m.symmetric()) {
  if (!(delta_cut > 0.0)) {
    throw ArgumentError("TailSampler: delta_cut must be positive");
  }
  closed_form_ = m.kind() == MeasureKind::stable;
  if (closed_form_) {
    alpha_ = m.alpha();
    coeff_ = m.stable_coeff() / m.alpha();  // per-side: coeff/alpha * r^-alpha
    tail_pos_ = tail_neg_ = coeff_ * std::pow(delta_, -alpha_);
  } else {
    auto build = [&](int sign) {
      auto density = [&m, sign](double u) { return m.density(sign * u); };
      const double total = quad::upper_tail(density, delta_);
      auto table = std::make_shared<SideTable>();
      if (total <= 0.0) {
        table->r = {delta_, 2.0 * delta_};
        table->tail = {0.0, 0.0};
        table->density = {0.0, 0.0};
        return std::pair(table, 0.0);
      }
      double rmax = 2.0 * delta_;
      while (quad::upper_tail(density, rmax) > kTailResidualFraction * total) {
        rmax *= 2.0;
        if (!std::isfinite(rmax)) {
          throw NumericalError("TailSampler: tail does not decay");
        }
      }
      const std::size_t cells = kTailTableCells;
      table->r.resize(cells + 1);
      table->tail.resize(cells + 1);
      table->density.resize(cells + 1);
      const double step = std::log(rmax / delta_) / static_cast<double>(cells);
      for (std::size_t j = 0; j <= cells; ++j) {
        table->r[j] = delta_ * std::exp(step * static_cast<double>(j));
        table->density[j] = density(table->r[j]);
      }
      table->tail[cells] = quad::upper_tail(density, rmax);
      for (std::size_t j = cells; j-- > 0;) {
        const double mass =
            quad::finite(density, table->r[j], table->r[j + 1], 1e-10);
        table->tail[j] = table->tail[j + 1] + mass;
      }
      return std::pair(table, table->tail.front());
    };
    auto [pt, ptail] = build(+1);
    pos_ = pt;
    tail_pos_ = ptail;
    if (symmetric_) {
      neg_ = pos_;
      tail_neg_ = tail_pos_;
    } else {
      auto [nt, ntail] = build(-1);
      neg_ = nt;
      tail_neg_ = ntail;
    }
  }
  if (!(total_rate() > 0.0)) {
    throw ArgumentError("TailSampler: measure has no mass beyond delta_cut");
  }
}

double TailSampler::side_tail(double r, int side) const {
  if (closed_form_) return coeff_ * std::pow(r, -alpha_);
  const auto& table = side > 0 ? *pos_ : *neg_;
  return table.interp_tail(r);
}

double TailSampler::positive_fraction() const {
  if (symmetric_) return 0.5;
  return tail_pos_ / (tail_pos_ + tail_neg_);
}

double TailSampler::tail_inverse(double q, int side) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw ArgumentError("tail_inverse: quantile must lie in (0, 1)");
  }
  const double tail_at_delta = side > 0 ? tail_pos_ : tail_neg_;
  if (!(tail_at_delta > 0.0)) {
    throw ArgumentError("tail_inverse: side has no mass");
  }
  const double target = q * tail_at_delta;
  int iterations = 0;
  double lo = delta_;
  double hi = closed_form_ ? delta_ * 2.0
                           : (side > 0 ? pos_->r.back() : neg_->r.back());
  if (closed_form_) {
    while (side_tail(hi, side) > target) {
      lo = hi;
      hi *= 4.0;
      if (++iterations > kBisectionLimit) {
        throw NumericalError("tail_inverse: bracketing failed");
      }
    }
  } else if (side_tail(hi, side) >= target) {
    // deeper than the table resolves (probability ~ residual fraction)
    return hi;
  }
  // bisection in log r on the monotone tail
  while (++iterations <= kBisectionLimit) {
    const double mid = std::sqrt(lo * hi);
    if (side_tail(mid, side) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * hi) return std::sqrt(lo * hi);
  }
  throw NumericalError("tail_inverse: bisection failed to converge");
}

double TailSampler::sample(RngStream& rng) const {
  const double su = rng.uniform();
  const int side = su < positive_fraction() ? +1 : -1;
  const double q = rng.uniform();
  return side * tail_inverse(q, side);
}

// ---------------------------------------------------------------------------
// NoiseSampler

NoiseSampler::NoiseSampler(const LevyTriplet& triplet, double epsilon,
                           double delta_cut,
                           std::optional<SmallJumpMode> small_jump_mode,
                           std::optional<SamplerPath> path)
    : scaled_(scale_triplet(triplet, epsilon)),
      epsilon_(epsilon),
      delta_cut_(delta_cut) {
  if (!(delta_cut > 0.0)) {
    throw ArgumentError("NoiseSampler: delta_cut must be positive");
  }
  const bool has_jumps = scaled_.jumps.has_value();
  const bool is_stable =
      has_jumps && scaled_.jumps->kind() == MeasureKind::stable;
  path_ = path.value_or(is_stable ? SamplerPath::exact_stable
                                  : SamplerPath::decomposition);
  if (path_ == SamplerPath::exact_stable && !is_stable) {
    throw ArgumentError("exact_stable path requires a stable jump measure");
  }
  effective_drift_ = scaled_.drift;
  if (!has_jumps) return;

  const JumpMeasure& jumps = *scaled_.jumps;
  if (path_ == SamplerPath::exact_stable) {
    inv_alpha_ = 1.0 / jumps.alpha();
    stable_sigma_unit_ = std::pow(
        jumps.stable_coeff() * stable_scale_constant(jumps.alpha()),
        inv_alpha_);
    return;
  }

  // decomposition path
  const double alpha_eff = jumps.alpha() > 0.0 ? jumps.alpha() : 1.5;
  mode_ = small_jump_mode.value_or(alpha_eff >= 1.0 ? SmallJumpMode::gaussian_proxy
                                                    : SmallJumpMode::drop);
  jump_rate_ = tail_mass(jumps, delta_cut_);
  if (!std::isfinite(jump_rate_)) {
    throw NumericalError("NoiseSampler: jump rate quadrature failed");
  }
  if (jump_rate_ > 0.0) {
    tail_ = std::make_shared<TailSampler>(jumps, delta_cut_);
  }
  if (mode_ == SmallJumpMode::gaussian_proxy) {
    small_var_ = truncated_moment2(jumps, delta_cut_);
  }
  if (!jumps.symmetric()) {
    // The compound-Poisson part draws jumps beyond delta_cut raw, while the
    // triplet drift compensates everything below 1; fold the difference
    // into the drift.
    if (delta_cut_ < 1.0) {
      effective_drift_ -= signed_annulus_moment(jumps, delta_cut_, 1.0);
    } else if (delta_cut_ > 1.0) {
      effective_drift_ += signed_annulus_moment(jumps, 1.0, delta_cut_);
    }
  }
}

double NoiseSampler::increment(double dt, RngStream& rng) const {
  if (!(dt > 0.0)) throw ArgumentError("increment: dt must be positive");
  double x = 0.0;
  if (path_ == SamplerPath::exact_stable) {
    x = scaled_.drift * dt;
    if (scaled_.variance > 0.0) {
      x += std::sqrt(scaled_.variance * dt) * rng.normal();
    }
    x += stable_sigma_unit_ * std::pow(dt, inv_alpha_) *
         cms_standard_draw(scaled_.jumps->alpha(), rng);
    return x;
  }
  x = effective_drift_ * dt;
  if (scaled_.variance > 0.0) {
    x += std::sqrt(scaled_.variance * dt) * rng.normal();
  }
  if (small_var_ > 0.0) {
    x += std::sqrt(small_var_ * dt) * rng.normal();
  }
  if (jump_rate_ > 0.0) {
    const std::uint64_t n = rng.poisson(jump_rate_ * dt);
    for (std::uint64_t i = 0; i < n; ++i) {
      x += tail_->sample(rng);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// free operations

double sample_gaussian_increment(double d, double eps, double dt,
                                 RngStream& rng) {
  if (!(d >= 0.0)) throw ArgumentError("gaussian increment: d must be >= 0");
  if (!(eps > 0.0) || !(dt > 0.0)) {
    throw ArgumentError("gaussian increment: eps and dt must be positive");
  }
  if (d == 0.0) return 0.0;
  return eps * std::sqrt(d * dt) * rng.normal();
}

double sample_stable_increment(double alpha, double eps, double dt,
                               RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ArgumentError("stable increment: alpha must lie in (0, 2)");
  }
  if (!(eps > 0.0) || !(dt > 0.0)) {
    throw ArgumentError("stable increment: eps and dt must be positive");
  }
  const double sigma =
      eps * std::pow(dt * stable_scale_constant(alpha), 1.0 / alpha);
  return sigma * cms_standard_draw(alpha, rng);
}

double sample_jump_size(const JumpMeasure& scaled, double delta_cut,
                        RngStream& rng) {
  TailSampler sampler(scaled, delta_cut);
  return sampler.sample(rng);
}

ValidationReport validate_sampler(const NoiseSampler& s, double t,
                                  std::size_t n,
                                  const std::vector<double>& lambda_grid,
                                  std::uint64_t seed) {
  if (n < 10000) {
    throw ArgumentError("validate_sampler: need at least 1e4 draws");
  }
  if (!(t > 0.0)) throw ArgumentError("validate_sampler: t must be positive");
  RngStream rng(seed, 0);
  std::vector<double> draws(n);
  for (std::size_t i = 0; i < n; ++i) draws[i] = s.increment(t, rng);

  ValidationReport report;
  report.threshold = 5.0 / std::sqrt(static_cast<double>(n)) + 1e-6;
  for (double lambda : lambda_grid) {
    double re = 0.0;
    double im = 0.0;
    for (double x : draws) {
      re += std::cos(lambda * x);
      im += std::sin(lambda * x);
    }
    const std::complex<double> ecf(re / static_cast<double>(n),
                                   im / static_cast<double>(n));
    const std::complex<double> target =
        std::exp(t * characteristic_exponent(s.scaled_triplet(), lambda));
    const double err = std::abs(ecf - target);
    report.rows.push_back({lambda, ecf, target, err});
    report.max_abs_error = std::max(report.max_abs_error, err);
  }
  report.pass = report.max_abs_error <= report.threshold;
  return report;
}

}  // namespace levylab
