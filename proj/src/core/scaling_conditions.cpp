#include "core/scaling_conditions.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace levylab {

namespace {

constexpr double kBoundednessFactor = 10.0;  // max/median threshold

void require_decreasing(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw ArgumentError(std::string(what) + ": grid is empty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] > grid[i + 1])) {
      throw ArgumentError(std::string(what) + ": grid must be strictly decreasing");
    }
  }
  if (!(grid.back() > 0.0)) {
    throw ArgumentError(std::string(what) + ": grid must stay positive");
  }
}

bool ratios_bounded(std::vector<double> ratios) {
  std::sort(ratios.begin(), ratios.end());
  const double max = ratios.back();
  const double median = ratios[ratios.size() / 2];
  if (median <= 0.0) return max <= 0.0 ? true : false;
  return max / median < kBoundednessFactor;
}

}  // namespace

ScaleFunction::ScaleFunction(Kind kind, double alpha,
                             std::function<double(double)> f, std::string name)
    : kind_(kind), alpha_(alpha), f_(std::move(f)), name_(std::move(name)) {}

ScaleFunction ScaleFunction::power(double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("scale function: alpha must be positive");
  return ScaleFunction(Kind::power, alpha, {}, "power");
}

ScaleFunction ScaleFunction::power_over_log(double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("scale function: alpha must be positive");
  return ScaleFunction(Kind::power_over_log, alpha, {}, "power_over_log");
}

ScaleFunction ScaleFunction::custom(std::function<double(double)> f,
                                    std::string name) {
  if (!f) throw ArgumentError("scale function: evaluator required");
  return ScaleFunction(Kind::custom, 0.0, std::move(f), std::move(name));
}

double ScaleFunction::operator()(double eps) const {
  if (!(eps > 0.0)) throw ArgumentError("scale function: eps must be positive");
  switch (kind_) {
    case Kind::power:
      return std::pow(eps, alpha_);
    case Kind::power_over_log:
      if (eps >= 1.0) {
        throw ArgumentError(
            "scale function eps^a/(-ln eps) requires eps < 1");
      }
      return std::pow(eps, alpha_) / (-std::log(eps));
    case Kind::custom:
      break;
  }
  const double v = f_(eps);
  if (!(v > 0.0)) throw ArgumentError("scale function must be positive");
  return v;
}

void ScaleFunction::verify_decreasing(const std::vector<double>& eps_grid) const {
  require_decreasing(eps_grid, "scale function");
  double prev = (*this)(eps_grid.front());
  for (std::size_t i = 1; i < eps_grid.size(); ++i) {
    const double v = (*this)(eps_grid[i]);
    if (!(v < prev)) {
      throw ArgumentError("scale function is not decreasing along the grid");
    }
    prev = v;
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

double scaled_tail_ratio(const JumpMeasure& m, const ScaleFunction& g1,
                         double gamma, double eps) {
  if (!(gamma > 0.0) || !(eps > 0.0)) {
    throw ArgumentError("scaled_tail_ratio: gamma and eps must be positive");
  }
  return tail_mass(m, gamma / eps) / g1(eps);
}

ConditionReport check_condition_A(const JumpMeasure& m, const ScaleFunction& g1,
                                  const std::vector<double>& gamma_grid,
                                  const std::vector<double>& eps_grid) {
  require_decreasing(eps_grid, "condition A eps grid");
  if (gamma_grid.empty()) throw ArgumentError("condition A: no gamma values");
  ConditionReport report;
  report.condition = 'A';
  bool all_bounded = true;
  for (double gamma : gamma_grid) {
    std::vector<double> ratios;
    ratios.reserve(eps_grid.size());
    double sup = 0.0;
    for (double eps : eps_grid) {
      const double r = scaled_tail_ratio(m, g1, gamma, eps);
      ratios.push_back(r);
      sup = std::max(sup, r);
      report.rows.push_back({gamma, eps, r});
    }
    report.k_of_gamma.emplace_back(gamma, sup);
    if (!ratios_bounded(ratios)) all_bounded = false;
  }
  report.verdict = all_bounded ? Verdict::pass : Verdict::fail;
  return report;
}

ConditionReport check_condition_B(const JumpMeasure& m, const ScaleFunction& g1,
                                  double delta,
                                  const std::vector<double>& eps_grid) {
  require_decreasing(eps_grid, "condition B eps grid");
  if (!(delta > 0.0)) throw ArgumentError("condition B: delta must be positive");
  ConditionReport report;
  report.condition = 'B';
  for (double k = 2.0; k <= 1048576.0; k *= 2.0) {
    double worst = 0.0;
    for (double eps : eps_grid) {
      const double r = scaled_tail_ratio(m, g1, k, eps);
      report.rows.push_back({k, eps, r});
      worst = std::max(worst, r);
    }
    if (worst <= delta) {
      report.verdict = Verdict::pass;
      report.k_estimate = k;
      return report;
    }
  }
  report.verdict = Verdict::fail;
  report.note = "no K <= 2^20 brings the tail ratio below delta";
  return report;
}

LimitTailResult limit_tail(const JumpMeasure& m, const ScaleFunction& g1,
                           double gamma,
                           const std::vector<double>& eps_sequence) {
  require_decreasing(eps_sequence, "limit_tail eps sequence");
  if (eps_sequence.size() < 4) {
    throw ArgumentError("limit_tail: need at least 4 epsilon values");
  }
  LimitTailResult result;
  result.ratios.reserve(eps_sequence.size());
  for (double eps : eps_sequence) {
    result.ratios.push_back(scaled_tail_ratio(m, g1, gamma, eps));
  }

  // Iterated Aitken delta-squared acceleration. Track the last entry of
  // each level; convergence requires the level-to-level changes to shrink
  // and the final relative change to be below 5%.
  std::vector<double> level = result.ratios;
  std::vector<double> diagonal{level.back()};
  while (level.size() >= 3) {
    std::vector<double> next(level.size() - 2);
    for (std::size_t i = 0; i + 2 < level.size(); ++i) {
      const double d1 = level[i + 1] - level[i];
      const double d2 = level[i + 2] - 2.0 * level[i + 1] + level[i];
      next[i] = std::abs(d2) < 1e-300 * (1.0 + std::abs(level[i]))
                    ? level[i + 2]
                    : level[i] - d1 * d1 / d2;
    }
    level = std::move(next);
    diagonal.push_back(level.back());
  }
  result.estimate = diagonal.back();

  if (diagonal.size() < 2) {
    result.converged = false;
    return result;
  }
  const double scale = std::abs(result.estimate) + 1e-300;
  const double final_change =
      std::abs(diagonal[diagonal.size() - 1] - diagonal[diagonal.size() - 2]);
  bool shrinking = true;
  for (std::size_t i = 2; i < diagonal.size(); ++i) {
    const double prev = std::abs(diagonal[i - 1] - diagonal[i - 2]);
    const double cur = std::abs(diagonal[i] - diagonal[i - 1]);
    if (cur > prev * 1.5 + 1e-14 * scale) {
      shrinking = false;
      break;
    }
  }
  result.converged = shrinking && final_change <= 0.05 * scale;
  return result;
}

double variance_integral(const JumpMeasure& m, double d, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("variance integral: eps must be positive");
  auto side = [&](int sign) {
    auto f = [&, sign](double y) {
      const double z = eps * y;
      return z * z / (1.0 + z * z) * m.density(sign * y);
    };
    return quad::origin(f, 1.0) + quad::upper_tail(f, 1.0);
  };
  const double jump_part = m.symmetric() ? 2.0 * side(+1) : side(+1) + side(-1);
  return d * eps * eps + jump_part;
}

double variance_integral_direct(const JumpMeasure& m, double d, double eps) {
  const LevyTriplet scaled =
      scale_triplet(LevyTriplet(0.0, 0.0, m), eps);
  const JumpMeasure& ms = *scaled.jumps;
  auto side = [&](int sign) {
    auto f = [&, sign](double u) {
      return u * u / (1.0 + u * u) * ms.density(sign * u);
    };
    return quad::origin(f, 1.0) + quad::upper_tail(f, 1.0);
  };
  const double jump_part = ms.symmetric() ? 2.0 * side(+1) : side(+1) + side(-1);
  return d * eps * eps + jump_part;
}

ConditionReport check_condition_D(const JumpMeasure& m, double d,
                                  const ScaleFunction& g2,
                                  const std::vector<double>& eps_grid,
                                  const ScaleFunction& g1) {
  require_decreasing(eps_grid, "condition D eps grid");
  if (!(d >= 0.0)) throw ArgumentError("condition D: d must be nonnegative");
  ConditionReport report;
  report.condition = 'D';
  std::vector<double> ratios;
  ratios.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const double r = variance_integral(m, d, eps) / g2(eps);
    ratios.push_back(r);
    report.k_estimate = std::max(report.k_estimate, r);
    report.rows.push_back({0.0, eps, r});
  }
  const bool bounded = ratios_bounded(ratios);

  int n_found = 0;
  for (int n = 1; n <= 8 && n_found == 0; ++n) {
    bool ok = true;
    for (double eps : eps_grid) {
      if (std::pow(g2(eps), n) > g1(eps) * (1.0 + 1e-12)) {
        ok = false;
        break;
      }
    }
    if (ok) n_found = n;
  }
  report.n_estimate = n_found;
  if (!bounded) {
    report.verdict = Verdict::fail;
    report.note = "variance ratio unbounded";
  } else if (n_found == 0) {
    report.verdict = Verdict::fail;
    report.note = "no n <= 8 with g2^n <= g1 on the grid";
  } else {
    report.verdict = Verdict::pass;
  }
  return report;
}

double drift_integral(const JumpMeasure& m, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("drift integral: eps must be positive");
  if (m.symmetric()) return 0.0;  // odd integrand
  auto side = [&](int sign) {
    auto f = [&, sign](double y) {
      const double z = eps * y;
      return z / (1.0 + z * z) * m.density(sign * y);
    };
    return quad::origin(f, 1.0) + quad::upper_tail(f, 1.0);
  };
  return side(+1) - side(-1);
}

ConditionReport check_condition_E(const JumpMeasure& m, const ScaleFunction& g3,
                                  const std::vector<double>& eps_grid) {
  require_decreasing(eps_grid, "condition E eps grid");
  ConditionReport report;
  report.condition = 'E';
  if (m.symmetric()) {
    for (double eps : eps_grid) report.rows.push_back({0.0, eps, 0.0});
    report.verdict = Verdict::pass;
    report.note = "symmetric measure: drift integral vanishes identically";
    return report;
  }
  std::vector<double> ratios;
  for (double eps : eps_grid) {
    const double r = std::abs(drift_integral(m, eps)) / g3(eps);
    ratios.push_back(r);
    report.k_estimate = std::max(report.k_estimate, r);
    report.rows.push_back({0.0, eps, r});
  }
  report.verdict = ratios_bounded(ratios) ? Verdict::pass : Verdict::fail;
  return report;
}

}  // namespace levylab
