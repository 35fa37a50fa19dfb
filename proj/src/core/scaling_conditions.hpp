#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/jump_measure.hpp"

namespace levylab {

/// A candidate scale function g(eps) > 0 with g(eps) -> 0 as eps -> 0.
class ScaleFunction {
 public:
  enum class Kind { power, power_over_log, custom };

  static ScaleFunction power(double alpha);           // eps^alpha
  static ScaleFunction power_over_log(double alpha);  // eps^alpha / (-ln eps)
  static ScaleFunction custom(std::function<double(double)> f,
                              std::string name);

  double operator()(double eps) const;
  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::string& name() const { return name_; }

  /// g must decrease to 0 along a decreasing eps grid; throws ArgumentError.
  void verify_decreasing(const std::vector<double>& eps_grid) const;

 private:
  ScaleFunction(Kind kind, double alpha, std::function<double(double)> f,
                std::string name);
  Kind kind_;
  double alpha_;
  std::function<double(double)> f_;
  std::string name_;
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct ConditionRow {
  double gamma_or_k;
  double epsilon;
  double ratio;
};

struct ConditionReport {
  char condition = '?';
  std::vector<ConditionRow> rows;
  Verdict verdict = Verdict::inconclusive;
  /// Condition A: sup ratio per gamma, the K(gamma) estimate.
  std::vector<std::pair<double, double>> k_of_gamma;
  /// Condition B: the found K; D and E: the sup ratio.
  double k_estimate = 0.0;
  /// Condition D: the exponent n with g2^n <= g1.
  int n_estimate = 0;
  std::string note;
};

/// tail_mass(m, gamma/eps) / g1(eps): the quantity conditions (A)-(C) bound.
double scaled_tail_ratio(const JumpMeasure& m, const ScaleFunction& g1,
                         double gamma, double eps);

/// Condition (A): for each gamma the ratio over the eps grid must stay
/// bounded (max/median < 10); reports sup ratio per gamma as K(gamma).
ConditionReport check_condition_A(const JumpMeasure& m, const ScaleFunction& g1,
                                  const std::vector<double>& gamma_grid,
                                  const std::vector<double>& eps_grid);

/// Condition (B): smallest K in {2, 4, ..., 2^20} with ratio <= delta
/// across the eps grid.
ConditionReport check_condition_B(const JumpMeasure& m, const ScaleFunction& g1,
                                  double delta,
                                  const std::vector<double>& eps_grid);

struct LimitTailResult {
  double estimate = 0.0;
  bool converged = false;
  std::vector<double> ratios;  // raw ratios along the eps sequence
};

/// nu*(R \ [-gamma, gamma]) estimated by accelerating the scaled tail
/// ratios along a decreasing eps sequence (iterated Aitken); flags
/// non-convergence instead of guessing.
LimitTailResult limit_tail(const JumpMeasure& m, const ScaleFunction& g1,
                           double gamma, const std::vector<double>& eps_sequence);

/// V(eps) = d eps^2 + int u^2/(1+u^2) nu(d(u/eps)), evaluated in the
/// substituted variable y = u/eps (integrand (eps y)^2/(1+(eps y)^2) eta(y)).
double variance_integral(const JumpMeasure& m, double d, double eps);

/// Same quantity integrated directly against the scaled density; the two
/// routes must agree (substitution identity).
double variance_integral_direct(const JumpMeasure& m, double d, double eps);

/// Condition (D): V/g2 bounded and g2^n <= g1 on the grid for some n <= 8.
ConditionReport check_condition_D(const JumpMeasure& m, double d,
                                  const ScaleFunction& g2,
                                  const std::vector<double>& eps_grid,
                                  const ScaleFunction& g1);

/// int u/(1+u^2) nu(d(u/eps)); zero by symmetry when applicable.
double drift_integral(const JumpMeasure& m, double eps);

/// Condition (E): symmetric measures pass outright with a zero integral;
/// otherwise |drift integral|/g3 must stay bounded on the grid.
ConditionReport check_condition_E(const JumpMeasure& m, const ScaleFunction& g3,
                                  const std::vector<double>& eps_grid);

}  // namespace levylab
