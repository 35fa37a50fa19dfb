#pragma once

#include <map>
#include <string>
#include <vector>

namespace levylab {

/// Shortest decimal with 12 significant digits; data rows must be
/// byte-identical across runs, so all CSV numbers go through here.
std::string csv_number(double v);

struct SweepCsvRow {
  double epsilon;
  double mean;
  double stderr_;
};

/// Reads a sweep CSV produced by the exit-mc subcommand (header
/// epsilon,n_paths,mean_exit,stderr,...), ignoring '#' comment lines.
std::vector<SweepCsvRow> read_sweep_csv(const std::string& path);

}  // namespace levylab
