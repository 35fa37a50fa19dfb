#include "core/exit_estimator.hpp"

#include <atomic>
#include <mutex>
#include <string>
#include <cmath>
#include <thread>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"

namespace levylab {

void ExitExperimentConfig::validate() const {
  if (epsilons.empty()) throw ArgumentError("config: epsilon sweep is empty");
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
    if (!(epsilons[i] > epsilons[i + 1])) {
      throw ArgumentError("config: epsilons must be strictly decreasing");
    }
  }
  for (double e : epsilons) {
    if (!(e > 0.0)) throw ArgumentError("config: epsilons must be positive");
  }
  if (n_paths < 100) throw ArgumentError("config: n_paths must be >= 100");
  if (!(dt > 0.0)) throw ArgumentError("config: dt must be positive");
  if (t_cap > 0.0 && t_cap < dt) {
    throw ArgumentError("config: t_cap must be >= dt");
  }
  if (!(delta_cut > 0.0)) throw ArgumentError("config: delta_cut must be positive");
  potential.validate_single_well(domain);
}

double ExitExperimentConfig::auto_t_cap(double eps) const {
  if (noise.jumps && eps < 1.0) {
    const JumpMeasure& m = *noise.jumps;
    if (m.kind() == MeasureKind::stable) {
      const double pred = stable_exit_prefactor(m.alpha(), domain.a, domain.b) /
                          std::pow(eps, m.alpha());
      return 1e4 * pred;
    }
    if (m.kind() == MeasureKind::log_perturbed_stable) {
      const double pred = stable_exit_prefactor(m.alpha(), domain.a, domain.b) *
                          std::abs(std::log(eps)) / std::pow(eps, m.alpha());
      return 1e4 * pred;
    }
  }
  return 1e6;
}

double ExitExperimentConfig::effective_t_cap(double eps) const {
  return t_cap > 0.0 ? t_cap : auto_t_cap(eps);
}

ExitTimeEstimate estimate_mean_exit(const ExitExperimentConfig& cfg, double eps,
                                    std::size_t eps_index, unsigned threads) {
  cfg.validate();
  if (!(eps > 0.0)) throw ArgumentError("estimate_mean_exit: eps must be positive");
  const double tc = cfg.effective_t_cap(eps);
  const NoiseSampler sampler(cfg.noise, eps, cfg.delta_cut, cfg.small_jump_mode,
                             cfg.sampler_path);

  const std::size_t n = cfg.n_paths;
  std::vector<double> times(n, 0.0);
  std::vector<unsigned char> censored(n, 0);

  unsigned n_threads = threads > 0 ? threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, n));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        const std::uint64_t stream_id =
            (static_cast<std::uint64_t>(eps_index) << 32) |
            static_cast<std::uint64_t>(i);
        RngStream rng(cfg.seed, stream_id);
        const ExitOutcome out = simulate_exit_path(
            cfg.potential, sampler, cfg.domain, cfg.x0, cfg.dt, tc, rng);
        times[i] = out.exited ? out.exit_time : tc;
        censored[i] = out.exited ? 0 : 1;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        failure_message = e.what();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) {
    throw NumericalError("estimate_mean_exit: path failure: " + failure_message);
  }

  // fixed-order reduction keeps the result independent of scheduling
  double sum = 0.0;
  std::size_t n_censored = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += times[i];
    n_censored += censored[i];
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = times[i] - mean;
    ss += d * d;
  }
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  const double se = std::sqrt(var / static_cast<double>(n));

  ExitTimeEstimate est;
  est.epsilon = eps;
  est.mean = mean;
  est.stderr_ = se;
  est.ci95_low = mean - 1.96 * se;
  est.ci95_high = mean + 1.96 * se;
  est.n_effective = n;
  est.censored_fraction = static_cast<double>(n_censored) / static_cast<double>(n);
  est.reliable = est.censored_fraction <= 0.01;
  if (est.censored_fraction > 0.5) {
    throw QualityError(
        "estimate_mean_exit: more than half of the paths were censored; the "
        "mean is meaningless at this t_cap");
  }
  return est;
}

std::vector<ExitTimeEstimate> sweep(
    const ExitExperimentConfig& cfg, unsigned threads,
    const std::function<void(const ExitTimeEstimate&)>& on_estimate,
    const std::function<void(double, const std::exception&)>& on_error) {
  cfg.validate();
  std::vector<ExitTimeEstimate> out;
  out.reserve(cfg.epsilons.size());
  for (std::size_t j = 0; j < cfg.epsilons.size(); ++j) {
    const double eps = cfg.epsilons[j];
    try {
      ExitTimeEstimate est = estimate_mean_exit(cfg, eps, j, threads);
      if (on_estimate) on_estimate(est);
      out.push_back(est);
    } catch (const std::exception& e) {
      if (on_error) {
        on_error(eps, e);
      } else {
        throw;
      }
    }
  }
  return out;
}

}  // namespace levylab
