#include "core/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace levylab {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

std::vector<SweepCsvRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep CSV '" + path + "'");
  std::string line;
  std::vector<std::string> header;
  int col_eps = -1, col_mean = -1, col_stderr = -1;
  std::vector<SweepCsvRow> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (header.empty()) {
      header = fields;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "epsilon") col_eps = static_cast<int>(i);
        if (header[i] == "mean_exit") col_mean = static_cast<int>(i);
        if (header[i] == "stderr") col_stderr = static_cast<int>(i);
      }
      if (col_eps < 0 || col_mean < 0 || col_stderr < 0) {
        throw ConfigError(path +
                          ": expected columns epsilon, mean_exit, stderr");
      }
      continue;
    }
    const auto need = static_cast<std::size_t>(
        std::max(col_eps, std::max(col_mean, col_stderr)));
    if (fields.size() <= need) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": too few CSV fields");
    }
    try {
      rows.push_back({std::stod(fields[static_cast<std::size_t>(col_eps)]),
                      std::stod(fields[static_cast<std::size_t>(col_mean)]),
                      std::stod(fields[static_cast<std::size_t>(col_stderr)])});
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": malformed number");
    }
  }
  return rows;
}

}  // namespace levylab
