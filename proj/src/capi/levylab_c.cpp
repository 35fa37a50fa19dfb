#include "levylab/levylab.h"

#include <iostream>
#include <string>

#include "core/errors.hpp"
#include "core/jump_measure.hpp"
#include "core/asymptotics.hpp"
#include "core/run.hpp"

struct levylab_run {
  levylab::RunConfig config = levylab::RunConfig::empty();
  std::string last_error;
};

namespace {

int map_exception(levylab_run* run) {
  try {
    throw;
  } catch (const levylab::QualityError& e) {
    if (run) run->last_error = e.what();
    return LEVYLAB_ERR_QUALITY;
  } catch (const levylab::NumericalError& e) {
    if (run) run->last_error = e.what();
    return LEVYLAB_ERR_NUMERICAL;
  } catch (const levylab::Error& e) {
    // ConfigError, ArgumentError
    if (run) run->last_error = e.what();
    return LEVYLAB_ERR_CONFIG;
  } catch (const std::exception& e) {
    if (run) run->last_error = e.what();
    return LEVYLAB_ERR_NUMERICAL;
  } catch (...) {
    if (run) run->last_error = "unknown error";
    return LEVYLAB_ERR_NUMERICAL;
  }
}

}  // namespace

extern "C" {

levylab_run* levylab_run_new(void) {
  try {
    return new levylab_run();
  } catch (...) {
    return nullptr;
  }
}

void levylab_run_free(levylab_run* run) { delete run; }

int levylab_run_load_config(levylab_run* run, const char* path) {
  if (!run || !path) return LEVYLAB_ERR_CONFIG;
  try {
    run->config = levylab::RunConfig::from_file(path);
    run->last_error.clear();
    return LEVYLAB_OK;
  } catch (...) {
    return map_exception(run);
  }
}

int levylab_run_set(levylab_run* run, const char* key, const char* value) {
  if (!run || !key || !value) return LEVYLAB_ERR_CONFIG;
  try {
    run->config.set(key, value);
    run->last_error.clear();
    return LEVYLAB_OK;
  } catch (...) {
    return map_exception(run);
  }
}

int levylab_run_exec(levylab_run* run, const char* subcommand,
                     const char* out_path) {
  if (!run || !subcommand) return LEVYLAB_ERR_CONFIG;
  try {
    const levylab::Subcommand sub = levylab::parse_subcommand(subcommand);
    const std::string out = out_path ? out_path : "-";
    const int status = levylab::run_subcommand(run->config, sub, out, std::cerr);
    run->last_error =
        status == 0 ? "" : "quality gate tripped (see diagnostics)";
    return status;
  } catch (...) {
    return map_exception(run);
  }
}

const char* levylab_run_last_error(const levylab_run* run) {
  if (!run) return "null handle";
  return run->last_error.c_str();
}

int levylab_stable_exit_prefactor(double alpha, double a, double b,
                                  double* out) {
  if (!out) return LEVYLAB_ERR_CONFIG;
  try {
    *out = levylab::stable_exit_prefactor(alpha, a, b);
    return LEVYLAB_OK;
  } catch (...) {
    return map_exception(nullptr);
  }
}

int levylab_stable_tail_mass(double alpha, double r, double* out) {
  if (!out) return LEVYLAB_ERR_CONFIG;
  try {
    *out = levylab::tail_mass(levylab::JumpMeasure::stable(alpha), r);
    return LEVYLAB_OK;
  } catch (...) {
    return map_exception(nullptr);
  }
}

const char* levylab_version(void) { return "0.1.0"; }

}  // extern "C"
