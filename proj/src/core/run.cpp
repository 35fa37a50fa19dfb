#include "core/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "core/asymptotics.hpp"
#include "core/csv.hpp"
#include "core/dynkin_solver.hpp"
#include "core/errors.hpp"

namespace levylab {

namespace {

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path.empty() || path == "-") {
      stream_ = &std::cout;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& out() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void write_sweep_row(std::ostream& out, const ExitTimeEstimate& est,
                     const ExitExperimentConfig& cfg) {
  out << csv_number(est.epsilon) << ',' << est.n_effective << ','
      << csv_number(est.mean) << ',' << csv_number(est.stderr_) << ','
      << csv_number(est.ci95_low) << ',' << csv_number(est.ci95_high) << ','
      << csv_number(est.censored_fraction) << ',' << csv_number(cfg.dt) << ','
      << cfg.seed << '\n';
}

int run_exit_mc(const RunConfig& cfg, const std::string& out_path,
                std::ostream& err) {
  const ExitExperimentConfig exp = cfg.build_experiment(true);
  OutputTarget target(out_path);
  target.out() << "epsilon,n_paths,mean_exit,stderr,ci95_low,ci95_high,"
                  "censored_fraction,dt,seed\n";
  int status = 0;
  sweep(
      exp, cfg.threads(),
      [&](const ExitTimeEstimate& est) {
        write_sweep_row(target.out(), est, exp);
        target.out().flush();
        err << "exit-mc: eps=" << est.epsilon << " mean=" << est.mean
            << " stderr=" << est.stderr_
            << " censored=" << est.censored_fraction << "\n";
        if (!est.reliable) {
          err << "exit-mc: warning: censoring above 1% at eps=" << est.epsilon
              << "; estimate flagged unreliable\n";
          status = std::max(status, 3);
        }
      },
      [&](double eps, const std::exception& e) {
        err << "exit-mc: eps=" << eps << " failed: " << e.what() << "\n";
        status = std::max(status, dynamic_cast<const QualityError*>(&e) != nullptr ? 3 : 2);
      });
  return status;
}

int run_solve(const RunConfig& cfg, const std::string& out_path,
              std::ostream& err) {
  const Potential pot = cfg.build_potential();
  const Domain dom = cfg.build_domain();
  const LevyTriplet noise = cfg.build_noise_triplet();
  const double eps = cfg.sweep_epsilons().front();
  const auto n = static_cast<std::size_t>(cfg.get_uint("solver.n", 2000));
  const double rho_factor = cfg.get_double("solver.rho_factor", 4.0);
  const double x0 = cfg.get_double("domain.x0", 0.0);

  const SolverGrid grid(dom, n, rho_factor);
  const MeanExitSolution sol = solve_mean_exit_bvp(pot, noise, eps, dom, grid);

  OutputTarget target(out_path);
  target.out() << "x,u\n";
  for (std::size_t i = 0; i < sol.nodes().size(); ++i) {
    target.out() << csv_number(sol.nodes()[i]) << ','
                 << csv_number(sol.values()[i]) << '\n';
  }
  target.out() << "# u_x0 = " << csv_number(sol(x0)) << '\n';
  err << "solve: eps=" << eps << " u(x0=" << x0 << ") = " << sol(x0) << "\n";
  return 0;
}

int run_predict(const RunConfig& cfg, const std::string& out_path,
                std::ostream& err) {
  const LevyTriplet noise = cfg.build_noise_triplet();
  const Domain dom = cfg.build_domain();

  const std::string fkind = cfg.get_string("predict.f_scale", "auto");
  std::optional<ScaleFunction> fscale;
  double mass = cfg.get_double("predict.nu_star_mass", 0.0);
  if (fkind == "auto") {
    if (!noise.jumps) {
      cfg.fail("predict.f_scale",
               "no jump measure; give predict.f_scale and predict.nu_star_mass "
               "explicitly");
    }
    const JumpMeasure& m = *noise.jumps;
    if (m.kind() == MeasureKind::stable) {
      fscale = ScaleFunction::power(m.alpha());
    } else if (m.kind() == MeasureKind::log_perturbed_stable) {
      fscale = ScaleFunction::power_over_log(m.alpha());
    } else {
      cfg.fail("predict.f_scale",
               "custom measures need an explicit scale function kind");
    }
    if (mass <= 0.0) {
      // nu* = |u|^{-1-alpha} du for both built-in classes
      mass = (std::pow(dom.a, -m.alpha()) + std::pow(dom.b, -m.alpha())) /
             m.alpha();
    }
  } else if (fkind == "power") {
    fscale = ScaleFunction::power(cfg.require_double("predict.f_alpha"));
  } else if (fkind == "power_over_log") {
    fscale = ScaleFunction::power_over_log(cfg.require_double("predict.f_alpha"));
  } else {
    cfg.fail("predict.f_scale", "expected auto, power or power_over_log");
  }
  if (!(mass > 0.0)) {
    cfg.fail("predict.nu_star_mass", "a positive nu* mass is required");
  }

  OutputTarget target(out_path);
  target.out() << "epsilon,predicted_mean_exit\n";
  for (double eps : cfg.sweep_epsilons()) {
    const double pred = predict_mean_exit(mass, *fscale, eps);
    target.out() << csv_number(eps) << ',' << csv_number(pred) << '\n';
    err << "predict: eps=" << eps << " mean_exit ~ " << pred << "\n";
  }
  return 0;
}

void write_condition_report(std::ostream& out, const ConditionReport& rep) {
  out << "condition,gamma_or_K,epsilon,ratio,verdict\n";
  const std::string verdict = to_string(rep.verdict);
  for (const auto& row : rep.rows) {
    out << rep.condition << ',' << csv_number(row.gamma_or_k) << ','
        << csv_number(row.epsilon) << ',' << csv_number(row.ratio) << ','
        << verdict << '\n';
  }
}

int run_conditions(const RunConfig& cfg, const std::string& out_path,
                   std::ostream& err) {
  const LevyTriplet noise = cfg.build_noise_triplet();
  if (!noise.jumps) {
    cfg.fail("noise.kind", "conditions need a jump measure");
  }
  const JumpMeasure& m = *noise.jumps;
  const ScaleFunction g1 = cfg.build_scale("g1");
  const ScaleFunction g2 = cfg.build_scale("g2");
  const ScaleFunction g3 = cfg.build_scale("g3");
  const std::vector<double> eps_grid = cfg.conditions_epsilons();
  const std::vector<double> gammas = cfg.conditions_gammas();
  const double b_delta = cfg.get_double("conditions.b_delta", 0.1);
  const double d = cfg.get_double("noise.d", 0.0);

  g1.verify_decreasing(eps_grid);

  ConditionReport rep_a = check_condition_A(m, g1, gammas, eps_grid);
  ConditionReport rep_b = check_condition_B(m, g1, b_delta, eps_grid);

  // Condition C through tail masses: one limit per gamma, recorded as rows
  // plus a final epsilon = 0 row holding the extrapolated estimate.
  ConditionReport rep_c;
  rep_c.condition = 'C';
  rep_c.verdict = Verdict::pass;
  for (double gamma : gammas) {
    const LimitTailResult res = limit_tail(m, g1, gamma, eps_grid);
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
      rep_c.rows.push_back({gamma, eps_grid[i], res.ratios[i]});
    }
    rep_c.rows.push_back({gamma, 0.0, res.estimate});
    if (!res.converged) rep_c.verdict = Verdict::inconclusive;
  }

  ConditionReport rep_d = check_condition_D(m, d, g2, eps_grid, g1);
  ConditionReport rep_e = check_condition_E(m, g3, eps_grid);

  int status = 0;
  auto emit = [&](const ConditionReport& rep) {
    if (out_path.empty() || out_path == "-") {
      write_condition_report(std::cout, rep);
    } else {
      std::string path = out_path;
      const auto dot = path.rfind(".csv");
      const std::string suffix = std::string(".") + rep.condition + ".csv";
      if (dot != std::string::npos && dot == path.size() - 4) {
        path = path.substr(0, dot) + suffix;
      } else {
        path += suffix;
      }
      std::ofstream f(path);
      if (!f) throw ConfigError("cannot open output file '" + path + "'");
      write_condition_report(f, rep);
    }
    err << "conditions: (" << rep.condition << ") " << to_string(rep.verdict);
    if (rep.condition == 'B' && rep.verdict == Verdict::pass) {
      err << " with K = " << rep.k_estimate;
    }
    if (rep.condition == 'D' && rep.n_estimate > 0) {
      err << " with n = " << rep.n_estimate;
    }
    err << "\n";
    if (rep.verdict == Verdict::inconclusive) status = std::max(status, 3);
  };
  emit(rep_a);
  emit(rep_b);
  emit(rep_c);
  emit(rep_d);
  emit(rep_e);
  return status;
}

int run_fit(const RunConfig& cfg, const std::string& out_path,
            std::ostream& err) {
  const std::string input = cfg.require_string("fit.input");
  const auto rows = read_sweep_csv(input);
  std::vector<FitPoint> points;
  points.reserve(rows.size());
  for (const auto& r : rows) points.push_back({r.epsilon, r.mean, r.stderr_});
  FitReport report;
  try {
    report = fit_scaling_law(points);
  } catch (const ArgumentError& e) {
    throw ConfigError(input + ": " + e.what());
  }

  OutputTarget target(out_path);
  target.out() << "model,beta,c,residual,r_squared,verdict\n";
  for (int i = 0; i < 3; ++i) {
    const ScalingFit& fit = report.fits[static_cast<std::size_t>(i)];
    std::string verdict;
    if (!fit.applicable) {
      verdict = "not_applicable";
    } else if (i == report.best) {
      verdict = report.inconclusive ? "inconclusive" : "best";
    } else if (std::find(report.close.begin(), report.close.end(), i) !=
               report.close.end()) {
      verdict = "inconclusive";
    } else {
      verdict = "rejected";
    }
    target.out() << to_string(fit.model) << ',' << csv_number(fit.beta) << ','
                 << csv_number(fit.c) << ',' << csv_number(fit.residual_sum)
                 << ',' << csv_number(fit.r_squared) << ',' << verdict << '\n';
  }
  err << "fit: best model " << to_string(report.fits[report.best].model)
      << (report.inconclusive ? " (inconclusive: residuals within 20%)" : "")
      << "\n";
  return report.inconclusive ? 3 : 0;
}

int run_validate(const RunConfig& cfg, const std::string& out_path,
                 std::ostream& err) {
  const LevyTriplet noise = cfg.build_noise_triplet();
  const double eps = cfg.sweep_epsilons().front();
  const double delta_cut = cfg.get_double("noise.delta_cut", 1e-3);

  std::optional<SmallJumpMode> mode;
  const std::string mode_str = cfg.get_string("noise.small_jump_mode", "auto");
  if (mode_str == "gaussian_proxy") mode = SmallJumpMode::gaussian_proxy;
  else if (mode_str == "drop") mode = SmallJumpMode::drop;

  std::optional<SamplerPath> path;
  const std::string path_str = cfg.get_string("noise.path", "auto");
  if (path_str == "exact") path = SamplerPath::exact_stable;
  else if (path_str == "decomposition") path = SamplerPath::decomposition;

  const NoiseSampler sampler(noise, eps, delta_cut, mode, path);
  const auto n = static_cast<std::size_t>(cfg.get_uint("validate.n", 100000));
  const double t = cfg.get_double("validate.t", 0.5);
  std::vector<double> lambdas{0.5, 1.0, 2.0, 5.0};
  if (cfg.has("validate.lambdas")) lambdas = cfg.get_double_list("validate.lambdas");
  const std::uint64_t seed = cfg.get_uint("validate.seed", cfg.get_uint("mc.seed", 0));

  const ValidationReport report = validate_sampler(sampler, t, n, lambdas, seed);

  OutputTarget target(out_path);
  target.out() << "lambda,ecf_real,ecf_imag,target_real,target_imag,abs_error\n";
  for (const auto& row : report.rows) {
    target.out() << csv_number(row.lambda) << ',' << csv_number(row.ecf.real())
                 << ',' << csv_number(row.ecf.imag()) << ','
                 << csv_number(row.target.real()) << ','
                 << csv_number(row.target.imag()) << ','
                 << csv_number(row.abs_error) << '\n';
  }
  target.out() << "# max_error = " << csv_number(report.max_abs_error)
               << ", threshold = " << csv_number(report.threshold)
               << ", verdict = " << (report.pass ? "pass" : "fail") << '\n';
  err << "validate-sampler: max |ECF - CF| = " << report.max_abs_error
      << " threshold " << report.threshold
      << (report.pass ? " (pass)" : " (FAIL)") << "\n";
  return report.pass ? 0 : 3;
}

}  // namespace

Subcommand parse_subcommand(const std::string& name) {
  if (name == "exit-mc") return Subcommand::exit_mc;
  if (name == "solve") return Subcommand::solve;
  if (name == "predict") return Subcommand::predict;
  if (name == "conditions") return Subcommand::conditions;
  if (name == "fit") return Subcommand::fit;
  if (name == "validate-sampler") return Subcommand::validate_sampler;
  throw ConfigError("unknown subcommand '" + name + "'");
}

int run_subcommand(const RunConfig& cfg, Subcommand sub,
                   const std::string& out_path, std::ostream& err) {
  switch (sub) {
    case Subcommand::exit_mc:
      return run_exit_mc(cfg, out_path, err);
    case Subcommand::solve:
      return run_solve(cfg, out_path, err);
    case Subcommand::predict:
      return run_predict(cfg, out_path, err);
    case Subcommand::conditions:
      return run_conditions(cfg, out_path, err);
    case Subcommand::fit:
      return run_fit(cfg, out_path, err);
    case Subcommand::validate_sampler:
      return run_validate(cfg, out_path, err);
  }
  throw ConfigError("unhandled subcommand");
}

}  // namespace levylab
