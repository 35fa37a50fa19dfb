#include "core/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/errors.hpp"
#include "core/expression.hpp"

namespace levylab {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "noise.kind", "noise.alpha", "noise.d", "noise.drift", "noise.delta_cut",
      "noise.small_jump_mode", "noise.path", "noise.symmetric",
      "noise.density_expr", "noise.density_file", "noise.density_file_neg",
      "potential.kind", "potential.coeffs",
      "domain.a", "domain.b", "domain.delta", "domain.x0",
      "mc.n_paths", "mc.dt", "mc.t_cap", "mc.seed",
      "sweep.epsilons",
      "conditions.g1", "conditions.g1_alpha", "conditions.g2",
      "conditions.g2_alpha", "conditions.g3", "conditions.g3_alpha",
      "conditions.gammas", "conditions.epsilons", "conditions.b_delta",
      "solver.n", "solver.rho_factor",
      "fit.input",
      "validate.n", "validate.t", "validate.lambdas", "validate.seed",
      "predict.f_scale", "predict.f_alpha", "predict.nu_star_mass",
      "run.threads",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Tabulated density: two whitespace-separated columns (u > 0 ascending,
// eta(u) > 0), interpolated linearly in log-log; zero outside the range.
std::function<double(double)> load_density_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open density table '" + path + "'");
  std::vector<double> lu, le;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream row(t);
    double u = 0.0, eta = 0.0;
    if (!(row >> u >> eta)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected two numeric columns");
    }
    if (!(u > 0.0) || !(eta > 0.0)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": u and eta(u) must be positive");
    }
    if (!lu.empty() && u <= std::exp(lu.back())) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": u column must be strictly increasing");
    }
    lu.push_back(std::log(u));
    le.push_back(std::log(eta));
  }
  if (lu.size() < 2) {
    throw ConfigError(path + ": density table needs at least two rows");
  }
  return [lu, le](double u) {
    const double x = std::log(std::abs(u));
    if (x < lu.front() || x > lu.back()) return 0.0;
    const auto it = std::upper_bound(lu.begin(), lu.end(), x);
    const std::size_t j =
        it == lu.end() ? lu.size() - 2
                       : static_cast<std::size_t>(it - lu.begin()) - 1;
    const double t = (x - lu[j]) / (lu[j + 1] - lu[j]);
    return std::exp((1.0 - t) * le[j] + t * le[j + 1]);
  };
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  cfg.path_ = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty value for '" +
                        key + "'");
    }
    cfg.entries_[key] = {value, lineno};
  }
  return cfg;
}

RunConfig RunConfig::empty() { return RunConfig(); }

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!known_keys().count(key)) {
    throw ConfigError("unknown config key '" + key + "'");
  }
  entries_[key] = {value, 0};
}

bool RunConfig::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

std::string RunConfig::where(const std::string& key) const {
  const auto it = entries_.find(key);
  const std::string line =
      it != entries_.end() && it->second.line > 0
          ? ":" + std::to_string(it->second.line)
          : "";
  return path_ + line + ": " + key;
}

void RunConfig::fail(const std::string& key, const std::string& msg) const {
  throw ConfigError(where(key) + ": " + msg);
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

std::string RunConfig::require_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(path_ + ": missing required key '" + key + "'");
  }
  return it->second.value;
}

double RunConfig::require_double(const std::string& key) const {
  const std::string v = require_string(key);
  try {
    std::size_t end = 0;
    const double x = std::stod(v, &end);
    if (end != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(key, "expected a number, got '" + v + "'");
  }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

std::uint64_t RunConfig::get_uint(const std::string& key,
                                  std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string v = require_string(key);
  try {
    std::size_t end = 0;
    const unsigned long long x = std::stoull(v, &end);
    if (end != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(key, "expected a nonnegative integer, got '" + v + "'");
  }
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = require_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key, "expected true/false, got '" + v + "'");
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
  const std::string v = require_string(key);
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail(key, "expected a comma-separated list of numbers, got '" + v + "'");
    }
  }
  if (out.empty()) fail(key, "list is empty");
  return out;
}

LevyTriplet RunConfig::build_noise_triplet() const {
  const std::string kind = get_string("noise.kind", "none");
  const double d = get_double("noise.d", 0.0);
  const double drift = get_double("noise.drift", 0.0);
  if (!(d >= 0.0)) fail("noise.d", "variance must be nonnegative");

  std::optional<JumpMeasure> jumps;
  try {
    if (kind == "stable") {
      jumps = JumpMeasure::stable(require_double("noise.alpha"));
    } else if (kind == "log_perturbed_stable") {
      jumps = JumpMeasure::log_perturbed_stable(require_double("noise.alpha"));
    } else if (kind == "custom") {
      if (!has("noise.symmetric")) {
        fail("noise.kind", "custom measures must declare noise.symmetric");
      }
      const bool symmetric = get_bool("noise.symmetric", true);
      const double alpha_hint = get_double("noise.alpha", 0.0);
      if (has("noise.density_expr") && has("noise.density_file")) {
        fail("noise.density_expr",
             "give either a density expression or a density file, not both");
      }
      if (has("noise.density_expr")) {
        jumps = JumpMeasure::custom(
            compile_density_expression(require_string("noise.density_expr")),
            symmetric, alpha_hint);
      } else if (has("noise.density_file")) {
        auto pos = load_density_table(require_string("noise.density_file"));
        if (has("noise.density_file_neg")) {
          if (symmetric) {
            fail("noise.density_file_neg",
                 "a separate negative-side table contradicts noise.symmetric");
          }
          auto neg = load_density_table(require_string("noise.density_file_neg"));
          jumps = JumpMeasure::custom(
              [pos, neg](double u) { return u >= 0.0 ? pos(u) : neg(-u); },
              false, alpha_hint);
        } else {
          jumps = JumpMeasure::custom(
              [pos, symmetric](double u) {
                return (u >= 0.0 || symmetric) ? pos(std::abs(u)) : 0.0;
              },
              symmetric, alpha_hint);
        }
      } else {
        fail("noise.kind",
             "custom measures need noise.density_expr or noise.density_file");
      }
    } else if (kind != "none") {
      fail("noise.kind",
           "expected stable, log_perturbed_stable, custom or none");
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(where("noise.kind") + ": " + e.what());
  }
  try {
    return LevyTriplet(drift, d, std::move(jumps));
  } catch (const ArgumentError& e) {
    throw ConfigError(where("noise.kind") + ": " + e.what());
  }
}

Potential RunConfig::build_potential() const {
  const std::string kind = get_string("potential.kind", "quadratic");
  if (kind == "quadratic") return Potential::quadratic();
  if (kind == "polynomial") {
    return Potential::polynomial(get_double_list("potential.coeffs"));
  }
  fail("potential.kind", "expected quadratic or polynomial");
}

Domain RunConfig::build_domain() const {
  const double a = require_double("domain.a");
  const double b = require_double("domain.b");
  const double delta = get_double("domain.delta", 0.1);
  try {
    return Domain(a, b, delta);
  } catch (const ArgumentError& e) {
    throw ConfigError(where("domain.a") + ": " + e.what());
  }
}

std::vector<double> RunConfig::sweep_epsilons() const {
  return get_double_list("sweep.epsilons");
}

ExitExperimentConfig RunConfig::build_experiment(bool check_start) const {
  ExitExperimentConfig cfg;
  cfg.potential = build_potential();
  cfg.domain = build_domain();
  cfg.x0 = get_double("domain.x0", 0.0);
  cfg.epsilons = sweep_epsilons();
  cfg.n_paths = static_cast<std::size_t>(get_uint("mc.n_paths", 10000));
  cfg.dt = get_double("mc.dt", 1e-3);
  const std::string tcap = get_string("mc.t_cap", "auto");
  cfg.t_cap = tcap == "auto" ? 0.0 : require_double("mc.t_cap");
  cfg.seed = get_uint("mc.seed", 0);
  cfg.noise = build_noise_triplet();
  cfg.delta_cut = get_double("noise.delta_cut", 1e-3);

  const std::string mode = get_string("noise.small_jump_mode", "auto");
  if (mode == "gaussian_proxy") cfg.small_jump_mode = SmallJumpMode::gaussian_proxy;
  else if (mode == "drop") cfg.small_jump_mode = SmallJumpMode::drop;
  else if (mode != "auto") fail("noise.small_jump_mode", "expected auto, gaussian_proxy or drop");

  const std::string path = get_string("noise.path", "auto");
  if (path == "exact") cfg.sampler_path = SamplerPath::exact_stable;
  else if (path == "decomposition") cfg.sampler_path = SamplerPath::decomposition;
  else if (path != "auto") fail("noise.path", "expected auto, exact or decomposition");

  try {
    cfg.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(path_ + ": " + e.what());
  }
  if (check_start && !in_gdelta(cfg.potential, cfg.domain, cfg.x0)) {
    fail("domain.x0", "start point is not in G^delta for the configured delta");
  }
  return cfg;
}

ScaleFunction RunConfig::build_scale(const std::string& which) const {
  const std::string key = "conditions." + which;
  const std::string kind = get_string(key, "power");
  const double alpha = get_double(key + "_alpha", 1.0);
  try {
    if (kind == "power") return ScaleFunction::power(alpha);
    if (kind == "power_over_log") return ScaleFunction::power_over_log(alpha);
  } catch (const ArgumentError& e) {
    throw ConfigError(where(key) + ": " + e.what());
  }
  fail(key, "expected power or power_over_log");
}

std::vector<double> RunConfig::conditions_epsilons() const {
  const std::string spec = get_string("conditions.epsilons", "geometric:1e-1,1e-8,15");
  if (spec.rfind("geometric:", 0) == 0) {
    std::istringstream in(spec.substr(10));
    std::string a, b, c;
    if (!std::getline(in, a, ',') || !std::getline(in, b, ',') ||
        !std::getline(in, c, ',')) {
      fail("conditions.epsilons", "expected geometric:hi,lo,count");
    }
    double hi = 0, lo = 0;
    long count = 0;
    try {
      hi = std::stod(a);
      lo = std::stod(b);
      count = std::stol(c);
    } catch (const std::exception&) {
      fail("conditions.epsilons", "expected geometric:hi,lo,count");
    }
    if (!(hi > lo) || !(lo > 0) || count < 2) {
      fail("conditions.epsilons", "need hi > lo > 0 and count >= 2");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(count - 1);
      out[static_cast<std::size_t>(i)] =
          std::exp(std::log(hi) + t * (std::log(lo) - std::log(hi)));
    }
    return out;
  }
  auto out = get_double_list("conditions.epsilons");
  return out;
}

std::vector<double> RunConfig::conditions_gammas() const {
  if (!has("conditions.gammas")) return {0.5, 1.0, 2.0, 4.0};
  return get_double_list("conditions.gammas");
}

unsigned RunConfig::threads() const {
  return static_cast<unsigned>(get_uint("run.threads", 0));
}

}  // namespace levylab
