// Batch front end over the levylab C API. Every subcommand reads one
// config file and writes one CSV (or several for `conditions`).

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "levylab/levylab.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path = "-";
  std::string epsilon_override;
  std::string fit_input;
  int threads = -1;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "config file (key = value)");
  if (config_required) c->required();
  cmd->add_option("--out", opts.out_path, "output CSV path ('-' for stdout)");
  cmd->add_option("--threads", opts.threads,
                  "worker threads (default: hardware count; results do not "
                  "depend on it)");
  cmd->add_option("--epsilon", opts.epsilon_override,
                  "override the sweep with a single epsilon");
}

int execute(const std::string& subcommand, const CommonOptions& opts) {
  levylab_run* run = levylab_run_new();
  if (!run) {
    std::fprintf(stderr, "levylab: out of memory\n");
    return LEVYLAB_ERR_NUMERICAL;
  }
  int status = LEVYLAB_OK;
  if (!opts.config_path.empty()) {
    status = levylab_run_load_config(run, opts.config_path.c_str());
  }
  if (status == LEVYLAB_OK && !opts.epsilon_override.empty()) {
    status = levylab_run_set(run, "sweep.epsilons", opts.epsilon_override.c_str());
  }
  if (status == LEVYLAB_OK && opts.threads >= 0) {
    status = levylab_run_set(run, "run.threads",
                             std::to_string(opts.threads).c_str());
  }
  if (status == LEVYLAB_OK && !opts.fit_input.empty()) {
    status = levylab_run_set(run, "fit.input", opts.fit_input.c_str());
  }
  if (status == LEVYLAB_OK) {
    status = levylab_run_exec(run, subcommand.c_str(), opts.out_path.c_str());
  }
  if (status != LEVYLAB_OK) {
    const char* msg = levylab_run_last_error(run);
    if (msg && msg[0]) std::fprintf(stderr, "levylab: %s\n", msg);
  }
  levylab_run_free(run);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-exit-time laboratory for SDEs driven by small Levy noise"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    bool config_required;
  };
  const Entry entries[] = {
      {"exit-mc", "Monte-Carlo mean exit times over the epsilon sweep", true},
      {"solve", "mean exit time by the nonlocal Dirichlet solver", true},
      {"predict", "asymptotic mean-exit predictor", true},
      {"conditions", "verify the measure-scaling conditions (A)-(E)", true},
      {"fit", "fit scaling laws to a sweep CSV", false},
      {"validate-sampler", "empirical characteristic function check", true},
  };

  CommonOptions opts[6];
  std::string chosen;
  for (int i = 0; i < 6; ++i) {
    CLI::App* cmd = app.add_subcommand(entries[i].name, entries[i].help);
    add_common_flags(cmd, opts[i], entries[i].config_required);
    if (std::string(entries[i].name) == "fit") {
      cmd->add_option("--in", opts[i].fit_input, "sweep CSV to fit");
    }
    cmd->callback([&chosen, name = std::string(entries[i].name)]() { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 6; ++i) {
    if (chosen == entries[i].name) return execute(chosen, opts[i]);
  }
  return LEVYLAB_ERR_CONFIG;
}
