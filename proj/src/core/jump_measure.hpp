#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

namespace levylab {

enum class MeasureKind { stable, log_perturbed_stable, custom };

/// An absolutely continuous Levy jump measure nu(du) = eta(u) du on R\{0}.
///
/// Construction verifies the integrability condition
///   int u^2/(1+u^2) eta(u) du < infinity
/// by quadrature (hard failure on divergence) and, when the measure is
/// declared symmetric, spot-checks eta(u) == eta(-u) on 32 grid points.
/// Immutable after construction; safe for concurrent reads.
class JumpMeasure {
 public:
  /// coeff * |u|^{-1-alpha}, symmetric, 0 < alpha < 2. Tail and moment
  /// functionals use closed forms.
  static JumpMeasure stable(double alpha, double coeff = 1.0);

  /// |u|^{-1-alpha} / (|ln|u|| + 1), symmetric, 0 < alpha < 2.
  static JumpMeasure log_perturbed_stable(double alpha);

  /// User-supplied density. `alpha_hint` (if > 0) is used only to pick
  /// sampler defaults; it carries no closed forms.
  static JumpMeasure custom(std::function<double(double)> density,
                            bool symmetric, double alpha_hint = 0.0);

  double density(double u) const { return density_(u); }
  MeasureKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  bool symmetric() const { return symmetric_; }
  /// Multiplier on |u|^{-1-alpha} (stable kind only).
  double stable_coeff() const { return coeff_; }

 private:
  JumpMeasure(MeasureKind kind, double alpha, double coeff, bool symmetric,
              std::function<double(double)> density);

  void verify_levy_condition() const;
  void verify_symmetry() const;

  MeasureKind kind_;
  double alpha_;
  double coeff_;
  bool symmetric_;
  std::function<double(double)> density_;
};

/// T(r) = nu(R \ [-r, r]), r > 0. Closed form for the stable kind,
/// quadrature otherwise.
double tail_mass(const JumpMeasure& m, double r);

/// int_{|u| <= r} u^2 eta(u) du.
double truncated_moment2(const JumpMeasure& m, double r);

/// int u/(1+u^2) eta(u) du. Exactly zero for symmetric measures; requires
/// absolute convergence otherwise (throws NumericalError if violated).
double compensator_drift(const JumpMeasure& m);

/// Generating triplet (drift, Gaussian variance, jump measure).
struct LevyTriplet {
  double drift = 0.0;
  double variance = 0.0;  // >= 0
  std::optional<JumpMeasure> jumps;

  LevyTriplet() = default;
  LevyTriplet(double drift_, double variance_,
              std::optional<JumpMeasure> jumps_ = std::nullopt);
};

/// psi(lambda) with
///   E exp(i lambda L_t) = exp(t psi(lambda)),
///   psi(lambda) = i*drift*lambda - variance*lambda^2/2
///               + int (e^{i lambda y} - 1 - i lambda y 1{|y|<1}) nu(dy).
/// The compensated integral is split at |y| = 1; the origin part uses a
/// series-stable integrand, the tail part an oscillation-aware rule.
std::complex<double> characteristic_exponent(const LevyTriplet& t,
                                             double lambda);

/// Triplet of the process eps * L_t. The returned jump density is
/// u -> eta(u/eps)/eps; the two drift-correction integrals of the
/// unscaled/scaled compensators are combined into one integral over the
/// annulus between 1 and 1/eps, which is always finite, and vanish for
/// symmetric measures.
LevyTriplet scale_triplet(const LevyTriplet& t, double epsilon);

}  // namespace levylab
