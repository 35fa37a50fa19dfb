#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/exit_estimator.hpp"
#include "core/scaling_conditions.hpp"

namespace levylab {

/// Flat key-value configuration (dotted section names, one level deep).
/// Unknown keys are rejected and every diagnostic carries file:line.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig empty();

  /// Insert or override a key (CLI flags); validates the key name.
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;

  // Typed getters; `require` distinguishes missing keys.
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  // Assembled domain objects. Invariants are re-validated here so that a
  // bad value fails with its file:line before any computation starts.
  LevyTriplet build_noise_triplet() const;
  Potential build_potential() const;
  Domain build_domain() const;
  /// check_start: additionally require x0 in G^delta.
  ExitExperimentConfig build_experiment(bool check_start = true) const;
  ScaleFunction build_scale(const std::string& which) const;  // "g1"/"g2"/"g3"
  std::vector<double> conditions_epsilons() const;
  std::vector<double> conditions_gammas() const;
  std::vector<double> sweep_epsilons() const;

  unsigned threads() const;

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };

  std::string where(const std::string& key) const;

  std::string path_ = "(config)";
  std::map<std::string, Entry> entries_;
};

}  // namespace levylab
