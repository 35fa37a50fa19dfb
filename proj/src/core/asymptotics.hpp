#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "core/scaling_conditions.hpp"

namespace levylab {

enum class FitModel { poly, log_poly, gauss_exp };

std::string to_string(FitModel m);

/// Fitted asymptotic law:
///   poly:      mean = c * eps^{-beta}
///   log_poly:  mean = c * |ln eps| * eps^{-beta}
///   gauss_exp: mean = exp(c / eps^2 + beta)   (beta an offset)
struct ScalingFit {
  FitModel model = FitModel::poly;
  double beta = 0.0;
  double c = 0.0;
  double residual_sum = 0.0;
  double r_squared = 0.0;
  bool applicable = true;  // log_poly needs all eps < 1
};

struct FitPoint {
  double epsilon;
  double mean;
  double stderr_;
};

/// Weighted least squares in log space for one model family; weights are
/// 1/(stderr/mean)^2 (delta method), uniform when no uncertainties are
/// given. Needs >= 2 points with distinct eps.
ScalingFit fit_model(const std::vector<FitPoint>& points, FitModel model);

struct FitReport {
  std::array<ScalingFit, 3> fits;  // indexed by FitModel order
  int best = 0;
  /// Models whose residual is within 20% of the best; when nonempty the
  /// selection is reported inconclusive instead of claiming a winner.
  std::vector<int> close;
  bool inconclusive = false;
};

/// Fits all three families and selects by residual; requires >= 4 points.
FitReport fit_scaling_law(const std::vector<FitPoint>& points);

/// alpha / (a^-alpha + b^-alpha): the exact mean-exit prefactor for
/// symmetric alpha-stable noise on [-b, a].
double stable_exit_prefactor(double alpha, double a, double b);

/// nu*(R \ [-b, a]) from a symmetric limit measure's tail function
/// gamma -> nu*(R \ [-gamma, gamma]).
double nu_star_interval_mass(const std::function<double(double)>& tail,
                             double a, double b);

/// 1 / (f_scale(eps) * nu*(R \ [-b, a])), the limiting mean exit time.
double predict_mean_exit(double nu_star_mass, const ScaleFunction& f_scale,
                         double eps);
double predict_mean_exit(const std::function<double(double)>& nu_star_tail,
                         const ScaleFunction& f_scale, double eps, double a,
                         double b);

}  // namespace levylab
