#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fpplab {

/// Everything a run needs, in CLI units. Fields left at their sentinel
/// (0 or empty) resolve to documented defaults at dispatch time:
/// m -> ceil(n^(1/3)) per n, scale -> ceil(sqrt(m)), delta -> largest
/// value with nu(B_delta) > 1/2, outer_factor -> mask_factor + 1.
struct ExperimentConfig {
  std::string experiment;
  std::string dist = "uniform:1:1.5";
  std::vector<int> n_values = {8, 16, 32, 64};
  int m = 0;
  double kappa = 0.1;
  double delta = 0.0;
  double mask_factor = 2.0;   // flag --c
  double outer_factor = 0.0;  // config key "outer"
  int scale = 0;
  int replicates = 1000;
  std::uint64_t master_seed = 1;
  std::string out = "results.csv";
  int max_seconds = 0;  // 0: no budget
  int threads = 1;
  double transform_scale = 1.0;  // config key "transform-scale"
  double a = 0.3;                // config key "a"
  double good_measure = 0.0;     // config key "good-measure"
};

const std::vector<std::string>& experiment_names();

/// Throws std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& cfg);

/// Reads either flat key=value lines or a JSON sidecar (detected by a
/// leading '{') into cfg, overwriting only the keys present in the file.
void load_config_file(const std::string& path, ExperimentConfig& cfg);

/// One CSV output line.
struct ResultRow {
  std::string experiment;
  std::string param_json_ref;
  int n = 0;
  std::string statistic;
  double value = 0.0;
  double stderr_ = 0.0;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::int64_t wall_ms = 0;
};

/// Sidecar path for an output CSV: extension swapped to .json.
std::string sidecar_path(const std::string& out_csv);

/// Runs the configured experiment, writes the CSV and its JSON sidecar.
/// Returns the process exit code: 0 success (including a budget abort with
/// rows flagged incomplete), 1 certificate violation, 2 configuration
/// error, 3 I/O failure. On nonzero, *error carries the diagnostic.
int run_experiment(const ExperimentConfig& cfg, std::string* error);

/// Reads rows back from a CSV written by run_experiment.
std::vector<ResultRow> read_result_rows(const std::string& csv_path);

/// Two-column plot data for one statistic. x_spec is "n", "logn" or
/// "logn-pow" (log(n) to the power 1/2 - kappa, kappa taken from the
/// sidecar named by the rows). Exit codes as for run_experiment.
int emit_plot_data(const std::string& in_csv, const std::string& x_spec,
                   const std::string& statistic, const std::string& out_path,
                   std::string* error);

}  // namespace fpplab
