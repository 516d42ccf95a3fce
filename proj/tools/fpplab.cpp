#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fpplab/experiment.hpp"

namespace {

std::string join_names() {
  std::string s;
  for (const auto& name : fpplab::experiment_names()) {
    if (!s.empty()) s += ", ";
    s += name;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-passage percolation simulation lab"};
  app.require_subcommand(1);

  // run -------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run an experiment and write CSV results");
  std::string experiment, dist, n_list, out, config_path;
  int m = 0, scale = 0, reps = 0, max_seconds = 0;
  double kappa = 0, delta = 0, c = 0;
  std::uint64_t seed = 0;
  run->add_option("experiment", experiment, "one of: " + join_names())
      ->required();
  auto* o_dist = run->add_option("--dist", dist, "weight law, e.g. uniform:1:1.5");
  auto* o_n = run->add_option("--n", n_list, "comma-separated sizes");
  auto* o_m = run->add_option("--m", m, "inner radius (0: ceil(n^(1/3)))");
  auto* o_kappa = run->add_option("--kappa", kappa, "shift exponent parameter in (0, 1/2)");
  auto* o_delta = run->add_option("--delta", delta, "good-set shift floor (0: auto)");
  auto* o_c = run->add_option("--c", c, "restriction box factor C > 1");
  auto* o_scale = run->add_option("--scale", scale, "crossing width (0: ceil(sqrt(m)))");
  auto* o_reps = run->add_option("--reps", reps, "replicates per size");
  auto* o_seed = run->add_option("--seed", seed, "master seed");
  auto* o_out = run->add_option("--out", out, "output CSV path");
  auto* o_config = run->add_option("--config", config_path,
                                   "key = value file or JSON sidecar; flags override");
  auto* o_budget = run->add_option("--max-seconds", max_seconds,
                                   "wall budget; partial rows are flagged incomplete");

  // plot ------------------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "emit two-column plot data from results");
  std::string in_path, x_spec = "n", y_stat, plot_out;
  plot->add_option("--in", in_path, "input CSV from a run")->required();
  plot->add_option("--x", x_spec, "abscissa: n, logn, or logn-pow")
      ->check(CLI::IsMember({"n", "logn", "logn-pow"}));
  plot->add_option("--y", y_stat, "statistic column to extract")->required();
  plot->add_option("--out", plot_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string error;
  if (run->parsed()) {
    fpplab::ExperimentConfig cfg;
    cfg.experiment = experiment;
    if (o_config->count()) {
      try {
        fpplab::load_config_file(config_path, cfg);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
    }
    if (o_dist->count()) cfg.dist = dist;
    if (o_n->count()) {
      cfg.n_values.clear();
      std::string item;
      std::stringstream ss(n_list);
      while (std::getline(ss, item, ',')) {
        try {
          cfg.n_values.push_back(std::stoi(item));
        } catch (const std::exception&) {
          std::fprintf(stderr, "error: --n: not an integer: %s\n", item.c_str());
          return 2;
        }
      }
    }
    if (o_m->count()) cfg.m = m;
    if (o_kappa->count()) cfg.kappa = kappa;
    if (o_delta->count()) cfg.delta = delta;
    if (o_c->count()) cfg.mask_factor = c;
    if (o_scale->count()) cfg.scale = scale;
    if (o_reps->count()) cfg.replicates = reps;
    if (o_seed->count()) cfg.master_seed = seed;
    if (o_out->count()) cfg.out = out;
    if (o_budget->count()) cfg.max_seconds = max_seconds;

    const int code = fpplab::run_experiment(cfg, &error);
    if (code != 0) std::fprintf(stderr, "error: %s\n", error.c_str());
    return code;
  }

  const int code =
      fpplab::emit_plot_data(in_path, x_spec, y_stat, plot_out, &error);
  if (code != 0) std::fprintf(stderr, "error: %s\n", error.c_str());
  return code;
}
