#pragma once

#include <cstdint>
#include <vector>

#include "core/sampler.hpp"

namespace levylab {

struct Domain;

/// Potential U with a single attracting equilibrium at 0. Only the
/// derivative U' enters the dynamics.
class Potential {
 public:
  enum class Kind { quadratic, polynomial };

  /// U(x) = x^2/2, U'(x) = x.
  static Potential quadratic();

  /// U'(x) = sum_k coeffs[k] * x^k (ascending powers).
  static Potential polynomial(std::vector<double> du_coeffs);

  double du(double x) const;
  /// U''(0); the linear coefficient of U'.
  double curvature_at_zero() const;
  /// 1/U''(0), or 1 when the curvature is not positive.
  double relaxation_time() const;

  /// Verifies U'(0) = 0 and x U'(x) > 0 on a 1024-point grid over
  /// [-b, a] \ {0}; throws ArgumentError when the well is not single.
  void validate_single_well(const Domain& dom) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  Potential(Kind kind, std::vector<double> coeffs);
  Kind kind_;
  std::vector<double> coeffs_;
};

/// Exit interval [-b, a] with interior margin delta for the G^delta set.
struct Domain {
  double a;
  double b;
  double delta;

  Domain(double a_, double b_, double delta_);
  bool contains(double x) const { return x >= -b && x <= a; }
};

enum class ExitSide { left, right };

struct ExitOutcome {
  bool exited = false;
  double exit_time = 0.0;  // censoring time when exited == false
  ExitSide side = ExitSide::right;
  std::uint64_t steps = 0;
};

struct FlowPoint {
  double t;
  double y;
};

/// RK4 trajectory of the noiseless flow dY/dt = -U'(Y), Y(0) = x, sampled
/// every dt up to t_end.
std::vector<FlowPoint> deterministic_flow(const Potential& u, double x,
                                          double t_end, double dt);

/// Whether the noiseless flow started at x keeps distance >= delta from
/// both barriers. Decided by integrating the flow over 50 relaxation times
/// (RK4, dt = 1e-3) and taking the minimum distance, not by assuming the
/// inward-flow reduction.
bool in_gdelta(const Potential& u, const Domain& dom, double x);

/// Euler-Maruyama path of dX = -U'(X) dt + dL_eps with exit detection after
/// the jump part of each step is applied; a start outside [-b, a] exits at
/// time zero. Censored at t_cap.
ExitOutcome simulate_exit_path(const Potential& u, const NoiseSampler& s,
                               const Domain& dom, double x0, double dt,
                               double t_cap, RngStream& rng);

}  // namespace levylab
