#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "core/dynamics.hpp"

namespace levylab {

/// Everything needed to run one exit-time Monte-Carlo experiment.
struct ExitExperimentConfig {
  Potential potential = Potential::quadratic();
  Domain domain{1.0, 1.0, 0.1};
  double x0 = 0.0;
  std::vector<double> epsilons;  // strictly decreasing
  std::size_t n_paths = 10000;
  double dt = 1e-3;
  double t_cap = 0.0;  // <= 0: choose automatically per epsilon
  std::uint64_t seed = 0;
  LevyTriplet noise;
  double delta_cut = 1e-3;
  std::optional<SmallJumpMode> small_jump_mode;
  std::optional<SamplerPath> sampler_path;

  /// Sweep/MC invariants: epsilons strictly decreasing, n_paths >= 100,
  /// dt and caps positive, single-well potential. Does not check x0 (the
  /// estimator must handle a start outside the domain); the config-file
  /// front end additionally requires x0 in G^delta.
  void validate() const;

  /// 1e4 * predicted mean exit time when the noise kind has a predictor,
  /// otherwise 1e6 time units.
  double auto_t_cap(double eps) const;
  double effective_t_cap(double eps) const;
};

struct ExitTimeEstimate {
  double epsilon = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::size_t n_effective = 0;
  double censored_fraction = 0.0;
  bool reliable = true;  // censored_fraction <= 0.01
};

/// Monte-Carlo mean exit time at one epsilon. Paths run in parallel with
/// per-path streams (stream_id = eps_index << 32 | path index) and are
/// reduced in fixed path order, so the result is independent of the thread
/// count. Censored paths contribute t_cap; censored_fraction > 0.5 throws
/// QualityError, > 0.01 clears `reliable`.
ExitTimeEstimate estimate_mean_exit(const ExitExperimentConfig& cfg,
                                    double eps, std::size_t eps_index = 0,
                                    unsigned threads = 0);

/// Estimates for every epsilon in cfg.epsilons. Per-epsilon failures are
/// reported through on_error and do not abort the sweep.
std::vector<ExitTimeEstimate> sweep(
    const ExitExperimentConfig& cfg, unsigned threads = 0,
    const std::function<void(const ExitTimeEstimate&)>& on_estimate = {},
    const std::function<void(double, const std::exception&)>& on_error = {});

}  // namespace levylab
