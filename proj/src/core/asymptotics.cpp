#include "core/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace levylab {

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::poly:
      return "poly";
    case FitModel::log_poly:
      return "log_poly";
    case FitModel::gauss_exp:
      return "gauss_exp";
  }
  return "?";
}

namespace {

struct Regression {
  double intercept;
  double slope;
  double ssr;
  double r2;
};

// Weighted simple linear regression y ~ intercept + slope * x.
Regression weighted_line(const std::vector<double>& x,
                         const std::vector<double>& y,
                         const std::vector<double>& w) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (!(std::abs(det) > 1e-30 * (sw * sxx + sx * sx + 1e-300))) {
    throw ArgumentError("fit: epsilon values are degenerate");
  }
  Regression reg{};
  reg.slope = (sw * sxy - sx * sy) / det;
  reg.intercept = (sy - reg.slope * sx) / sw;
  const double ybar = sy / sw;
  double ssr = 0, sst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fit = reg.intercept + reg.slope * x[i];
    ssr += w[i] * (y[i] - fit) * (y[i] - fit);
    sst += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  reg.ssr = ssr;
  reg.r2 = sst > 0 ? std::max(0.0, 1.0 - ssr / sst) : (ssr <= 1e-20 ? 1.0 : 0.0);
  return reg;
}

std::vector<double> log_weights(const std::vector<FitPoint>& pts) {
  // delta method: var(ln m) ~ (stderr/mean)^2
  std::vector<double> w(pts.size(), 1.0);
  bool any = false;
  for (const auto& p : pts) {
    if (p.stderr_ > 0.0 && p.mean > 0.0) any = true;
  }
  if (!any) return w;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double rel = pts[i].mean > 0.0 ? pts[i].stderr_ / pts[i].mean : 0.0;
    const double floor = 1e-6;
    w[i] = 1.0 / std::max(rel * rel, floor * floor);
  }
  return w;
}

}  // namespace

ScalingFit fit_model(const std::vector<FitPoint>& points, FitModel model) {
  if (points.size() < 2) throw ArgumentError("fit_model: need at least 2 points");
  for (const auto& p : points) {
    if (!(p.epsilon > 0.0)) throw ArgumentError("fit_model: eps must be positive");
    if (!(p.mean > 0.0)) throw ArgumentError("fit_model: means must be positive");
  }
  ScalingFit fit;
  fit.model = model;
  if (model == FitModel::log_poly) {
    for (const auto& p : points) {
      if (p.epsilon >= 1.0) {
        fit.applicable = false;
        fit.residual_sum = std::numeric_limits<double>::infinity();
        return fit;
      }
    }
  }
  std::vector<double> x(points.size()), y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double eps = points[i].epsilon;
    const double lm = std::log(points[i].mean);
    switch (model) {
      case FitModel::poly:
        x[i] = -std::log(eps);
        y[i] = lm;
        break;
      case FitModel::log_poly:
        x[i] = -std::log(eps);
        y[i] = lm - std::log(std::abs(std::log(eps)));
        break;
      case FitModel::gauss_exp:
        x[i] = 1.0 / (eps * eps);
        y[i] = lm;
        break;
    }
  }
  const auto w = log_weights(points);
  const Regression reg = weighted_line(x, y, w);
  fit.residual_sum = reg.ssr;
  fit.r_squared = reg.r2;
  if (model == FitModel::gauss_exp) {
    fit.c = reg.slope;
    fit.beta = reg.intercept;
  } else {
    fit.beta = reg.slope;
    fit.c = std::exp(reg.intercept);
  }
  return fit;
}

FitReport fit_scaling_law(const std::vector<FitPoint>& points) {
  if (points.size() < 4) {
    throw ArgumentError("fit_scaling_law: need at least 4 points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].epsilon == points[j].epsilon) {
        throw ArgumentError("fit_scaling_law: eps values must be distinct");
      }
    }
  }
  FitReport report;
  report.fits = {fit_model(points, FitModel::poly),
                 fit_model(points, FitModel::log_poly),
                 fit_model(points, FitModel::gauss_exp)};
  report.best = 0;
  for (int i = 1; i < 3; ++i) {
    if (report.fits[i].residual_sum < report.fits[report.best].residual_sum) {
      report.best = i;
    }
  }
  const double best_res = report.fits[report.best].residual_sum;
  for (int i = 0; i < 3; ++i) {
    if (i == report.best || !report.fits[i].applicable) continue;
    // residuals within 20% of each other cannot be told apart honestly
    if (report.fits[i].residual_sum <= best_res * 1.2 + 1e-300) {
      report.close.push_back(i);
    }
  }
  report.inconclusive = !report.close.empty();
  return report;
}

double stable_exit_prefactor(double alpha, double a, double b) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ArgumentError("prefactor: alpha must lie in (0, 2)");
  }
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ArgumentError("prefactor: barriers must be positive");
  }
  return alpha / (std::pow(a, -alpha) + std::pow(b, -alpha));
}

double nu_star_interval_mass(const std::function<double(double)>& tail,
                             double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ArgumentError("nu* mass: barriers must be positive");
  }
  // symmetric nu*: mass((gamma, inf)) = tail(gamma)/2
  return 0.5 * (tail(a) + tail(b));
}

double predict_mean_exit(double nu_star_mass, const ScaleFunction& f_scale,
                         double eps) {
  if (!(nu_star_mass > 0.0)) {
    throw ArgumentError(
        "predict_mean_exit: nu*(R \\ [-b,a]) must be positive (theorem "
        "inapplicable otherwise)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ArgumentError("predict_mean_exit: eps must lie in (0, 1)");
  }
  return 1.0 / (f_scale(eps) * nu_star_mass);
}

double predict_mean_exit(const std::function<double(double)>& nu_star_tail,
                         const ScaleFunction& f_scale, double eps, double a,
                         double b) {
  return predict_mean_exit(nu_star_interval_mass(nu_star_tail, a, b), f_scale,
                           eps);
}

}  // namespace levylab
