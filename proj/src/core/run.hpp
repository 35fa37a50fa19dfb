#pragma once

#include <string>

#include "core/config.hpp"

namespace levylab {

enum class Subcommand { exit_mc, solve, predict, conditions, fit, validate_sampler };

/// Maps the CLI spelling (exit-mc, solve, predict, conditions, fit,
/// validate-sampler); throws ConfigError for anything else.
Subcommand parse_subcommand(const std::string& name);

/// Executes one subcommand pipeline, writing CSV to out_path ("-" for
/// stdout). Returns 0 on success or 3 when a quality gate tripped
/// (censoring above 1%, inconclusive verdicts, failed sampler validation);
/// throws ConfigError / NumericalError for status 1 / 2 situations.
/// Progress and per-epsilon diagnostics go to the error stream.
int run_subcommand(const RunConfig& cfg, Subcommand sub,
                   const std::string& out_path, std::ostream& err);

}  // namespace levylab
