#include "fpplab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fpplab/claims.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunState {
  const ExperimentConfig& cfg;
  std::string ref;
  Clock::time_point start = Clock::now();
  bool has_deadline = false;
  Clock::time_point deadline;
  std::vector<ResultRow> rows;
  bool incomplete = false;
  json resolved = json::object();

  explicit RunState(const ExperimentConfig& c) : cfg(c) {
    ref = std::filesystem::path(sidecar_path(c.out)).filename().string();
    if (c.max_seconds > 0) {
      has_deadline = true;
      deadline = start + std::chrono::seconds(c.max_seconds);
    }
  }

  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                 start)
        .count();
  }

  /// True once the wall budget is spent; the caller stops starting new work.
  bool out_of_budget() {
    if (has_deadline && Clock::now() >= deadline) incomplete = true;
    return incomplete;
  }

  void push_raw(int n, const std::string& stat, double value, double se,
                int reps) {
    rows.push_back(ResultRow{cfg.experiment, ref, n, stat, value, se, reps,
                             cfg.master_seed, elapsed_ms()});
  }

  void push(const EstimateRecord& rec) {
    push_raw(rec.n, rec.observable, rec.mean, rec.stderr_, rec.replicates);
  }

  void push_all(const std::vector<EstimateRecord>& recs) {
    for (const auto& r : recs) push(r);
  }
};

int resolve_m(const ExperimentConfig& cfg, int n) {
  if (cfg.m > 0) return cfg.m;
  return static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-9));
}

MonteCarloConfig mc_for(const ExperimentConfig& cfg,
                        const WeightDistribution& dist, int n) {
  return MonteCarloConfig{dist,
                          {n},
                          cfg.replicates,
                          cfg.master_seed,
                          cfg.mask_factor,
                          cfg.outer_factor,
                          cfg.threads};
}

void run_three_point_gap(RunState& st, const WeightDistribution& dist) {
  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) return;
    st.push_all(estimate_three_point_gap(mc_for(st.cfg, dist, n)));
  }
}

void run_time_constant(RunState& st, const WeightDistribution& dist) {
  double mu_hat = 1e300;
  int largest_done = 0;
  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) break;
    const auto est = estimate_time_constant(mc_for(st.cfg, dist, n),
                                            Axis::horizontal);
    st.push_all(est.records);
    mu_hat = std::min(mu_hat, est.mu_hat);
    largest_done = std::max(largest_done, n);
  }
  if (largest_done > 0)
    st.push_raw(largest_done, "mu_hat", mu_hat, 0.0, st.cfg.replicates);
}

void run_midpoint(RunState& st, const WeightDistribution& dist) {
  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) return;
    const int m = st.cfg.m > 0 ? st.cfg.m : std::min(resolve_m(st.cfg, n), n);
    st.push_all(midpoint_avoidance_probability(mc_for(st.cfg, dist, n), m));
  }
}

void run_confinement(RunState& st, const WeightDistribution& dist) {
  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) return;
    st.push_all(confinement_probability(mc_for(st.cfg, dist, n)));
  }
}

void run_good_ratio(RunState& st, const WeightDistribution& dist) {
  GoodSet good;
  if (st.cfg.good_measure > 0.0) {
    good = good_set_upper_mass(dist, st.cfg.good_measure);
  } else {
    const WeightTransform t(dist, st.cfg.transform_scale);
    const double d = st.cfg.delta > 0.0 ? st.cfg.delta : choose_delta(t, 0.5);
    good = build_good_set(t, d);
    st.resolved["delta_used"] = d;
  }
  st.resolved["nu_good"] = good.nu;
  st.push_raw(0, "good_nu", good.nu, 0.0, 0);
  if (!(good.nu > 0.5))
    std::fprintf(stderr,
                 "warning: nu(good)=%.4f is at or below the percolation "
                 "threshold 1/2; the boundary-count ratio degenerates\n",
                 good.nu);
  double a_hat = 0.0;
  int largest_done = 0;
  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) break;
    const auto est = good_ratio_estimate(mc_for(st.cfg, dist, n), good);
    st.push_all(est.records);
    if (n >= largest_done) {
      largest_done = n;
      a_hat = est.a_hat;
    }
  }
  if (largest_done > 0)
    st.push_raw(largest_done, "a_hat", a_hat, 0.0, st.cfg.replicates);
}

void run_claims(RunState& st, const WeightDistribution& dist, int which) {
  const WeightTransform t(dist, st.cfg.transform_scale);
  const double d = st.cfg.delta > 0.0 ? st.cfg.delta : choose_delta(t, 0.5);
  const GoodSet good = build_good_set(t, d);
  st.resolved["delta_used"] = d;
  st.resolved["nu_good"] = good.nu;
  std::string first_failure;

  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) break;
    const int m = resolve_m(st.cfg, n);
    const TauField field = build_tau_field(m, st.cfg.kappa, {0, 0});
    const BoxSpec region{scaled_radius(st.cfg.mask_factor, n), {0, 0}};
    const int scale = st.cfg.scale > 0 ? st.cfg.scale : -1;

    std::vector<ClaimReport> reports(st.cfg.replicates);
    parallel_for(st.cfg.replicates, st.cfg.threads, [&](std::size_t r) {
      const auto seed =
          derive_seed(st.cfg.master_seed, n, static_cast<int>(r));
      const CoupledPair pair =
          make_coupled_pair(region, dist, seed, field, t, good);
      reports[r] = which == 1 ? verify_claim1(pair, n, m, scale, st.cfg.a)
                              : verify_claim2(pair, n, m);
    });

    std::vector<double> pass01(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
      pass01[i] = reports[i].pass ? 1.0 : 0.0;
      if (!reports[i].pass && first_failure.empty()) {
        std::ostringstream msg;
        msg << "claim " << which << " violated at n=" << n << " replicate "
            << i << ": lhs=" << reports[i].lhs << " rhs=" << reports[i].rhs;
        first_failure = msg.str();
      }
    }

    if (which == 1) {
      std::vector<double> lhs(reports.size()), tau(reports.size()),
          taupos(reports.size());
      double margin_min = 1e300;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        lhs[i] = reports[i].lhs;
        tau[i] = reports[i].annulus.tau_sum;
        taupos[i] = reports[i].annulus.tau_sum > 0.0 ? 1.0 : 0.0;
        margin_min = std::min(margin_min, reports[i].lhs - reports[i].rhs);
      }
      st.push(summarize("claim1_gap_mean", n, lhs, st.cfg.master_seed));
      st.push(summarize("claim1_tau_sum_mean", n, tau, st.cfg.master_seed));
      st.push(summarize("claim1_tau_pos_rate", n, taupos, st.cfg.master_seed));
      st.push(summarize("claim1_pass_rate", n, pass01, st.cfg.master_seed));
      st.push_raw(n, "claim1_margin_min", margin_min, 0.0,
                  static_cast<int>(reports.size()));
    } else {
      std::vector<double> trig01(reports.size());
      double max_dev = 0.0;
      int triggered = 0;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        trig01[i] = reports[i].triggered ? 1.0 : 0.0;
        if (reports[i].triggered) {
          ++triggered;
          max_dev = std::max(max_dev, reports[i].lhs);
        }
      }
      st.push(summarize("claim2_trigger_rate", n, trig01, st.cfg.master_seed));
      st.push(summarize("claim2_pass_rate", n, pass01, st.cfg.master_seed));
      st.push_raw(n, "claim2_max_dev", max_dev, 0.0, triggered);
    }
  }
  if (!first_failure.empty()) throw CertificateError(first_failure);
}

void run_goal_chain_exp(RunState& st, const WeightDistribution& dist) {
  for (int n : st.cfg.n_values) {
    if (st.out_of_budget()) return;
    GoalChainConfig gc{mc_for(st.cfg, dist, n),
                       resolve_m(st.cfg, n),
                       st.cfg.kappa,
                       st.cfg.delta,
                       st.cfg.scale > 0 ? st.cfg.scale : -1,
                       st.cfg.a,
                       st.cfg.transform_scale};
    const GoalChainResult res = run_goal_chain(gc);
    st.push_all(res.records);
    st.resolved["delta_used"] = res.delta_used;
    st.resolved["nu_good"] = res.nu_good;
  }
}

void run_tau_norm(RunState& st) {
  std::vector<double> values;
  std::vector<int> ms;
  for (int m : st.cfg.n_values) {
    if (st.out_of_budget()) break;
    if (m < 2)
      throw std::invalid_argument("tau-norm: every m (the n list) must be >= 2");
    const TauField field = build_tau_field(m, st.cfg.kappa, {0, 0});
    values.push_back(tau_norm_sq(field));
    ms.push_back(m);
    st.push_raw(m, "tau_norm_sq", values.back(), 0.0, 1);
  }
  for (std::size_t i = 2; i < values.size(); ++i) {
    const double prev = values[i - 1] - values[i - 2];
    const double cur = values[i] - values[i - 1];
    if (prev > 0.0)
      st.push_raw(ms[i], "tau_norm_increment_ratio", cur / prev, 0.0, 1);
  }
}

void run_mw_certificate(RunState& st, const WeightDistribution& dist) {
  if (st.out_of_budget()) return;
  const WeightTransform t(dist, st.cfg.transform_scale);
  const int trials = st.cfg.replicates;
  std::vector<double> slack(trials), pass01(trials);

  parallel_for(trials, st.cfg.threads, [&](std::size_t r) {
    std::uint64_t k = 0;
    auto u = [&] {
      return keyed_uniform01(st.cfg.master_seed, static_cast<std::uint64_t>(r),
                             k++);
    };
    const int dim = std::min(5, 1 + static_cast<int>(u() * 5.0));
    std::vector<double> tau(dim);
    std::vector<IntervalUnion> sets(dim);
    for (int i = 0; i < dim; ++i) {
      tau[i] = u();
      const int parts = u() < 0.3 ? 2 : 1;
      std::vector<double> levels(2 * parts);
      for (int attempt = 0; attempt < 100; ++attempt) {
        for (double& l : levels) l = 1e-4 + u() * (1.0 - 2e-4);
        std::sort(levels.begin(), levels.end());
        double min_gap = 1.0;
        for (std::size_t j = 1; j < levels.size(); ++j)
          min_gap = std::min(min_gap, levels[j] - levels[j - 1]);
        if (min_gap >= 1e-3) break;
      }
      IntervalUnion iu;
      for (int p = 0; p < parts; ++p)
        iu.add(dist.quantile(levels[2 * p]), dist.quantile(levels[2 * p + 1]));
      sets[i] = iu;
    }
    const MeasureInequalityReport rep =
        measure_inequality_certificate(t, tau, sets);
    slack[r] = rep.lhs - rep.rhs;
    pass01[r] = rep.pass ? 1.0 : 0.0;
  });

  st.push(summarize("mw_pass_rate", 0, pass01, st.cfg.master_seed));
  st.push_raw(0, "mw_min_slack",
              *std::min_element(slack.begin(), slack.end()), 0.0, trials);

  const WeightTransform unit(WeightDistribution::uniform(0.0, 1.0), 1.0);
  const MeasureInequalityReport worked = measure_inequality_certificate(
      unit, {1.0}, {IntervalUnion::single(0.0, 0.5)});
  st.push_raw(1, "mw_worked_lhs", worked.lhs, 0.0, 1);
  st.push_raw(1, "mw_worked_rhs", worked.rhs, 0.0, 1);

  for (int i = 0; i < trials; ++i)
    if (pass01[i] == 0.0) {
      std::ostringstream msg;
      msg << "measure inequality violated on trial " << i << ": min slack "
          << *std::min_element(slack.begin(), slack.end());
      throw CertificateError(msg.str());
    }
}

bool write_outputs(const RunState& st, std::string* error) {
  json j;
  j["experiment"] = st.cfg.experiment;
  j["dist"] = st.cfg.dist;
  j["n"] = st.cfg.n_values;
  j["m"] = st.cfg.m;
  j["kappa"] = st.cfg.kappa;
  j["delta"] = st.cfg.delta;
  j["c"] = st.cfg.mask_factor;
  j["outer"] = st.cfg.outer_factor;
  j["scale"] = st.cfg.scale;
  j["reps"] = st.cfg.replicates;
  j["seed"] = st.cfg.master_seed;
  j["out"] = st.cfg.out;
  j["max-seconds"] = st.cfg.max_seconds;
  j["threads"] = st.cfg.threads;
  j["transform-scale"] = st.cfg.transform_scale;
  j["a"] = st.cfg.a;
  j["good-measure"] = st.cfg.good_measure;
  j["incomplete"] = st.incomplete;
  if (!st.resolved.empty()) j["resolved"] = st.resolved;

  const std::string side = sidecar_path(st.cfg.out);
  {
    std::ofstream f(side);
    if (f) f << j.dump(2) << '\n';
    if (!f) {
      *error = "cannot write sidecar: " + side;
      return false;
    }
  }
  std::ofstream f(st.cfg.out);
  if (f) {
    f << "experiment,param_json_ref,n,statistic,value,stderr,replicates,seed,"
         "wall_ms\n";
    for (const auto& r : st.rows)
      f << r.experiment << ',' << r.param_json_ref << ',' << r.n << ','
        << r.statistic << ',' << fmt17(r.value) << ',' << fmt17(r.stderr_)
        << ',' << r.replicates << ',' << r.seed << ',' << r.wall_ms << '\n';
  }
  if (!f) {
    *error = "cannot write results: " + st.cfg.out;
    return false;
  }
  return true;
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not an integer: " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument(key + ": not an integer: " + value);
  return v;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not a number: " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument(key + ": not a number: " + value);
  return v;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<int>(parse_long(key, item)));
  if (out.empty()) throw std::invalid_argument(key + ": empty list");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void apply_config_key(const std::string& key, const std::string& value,
                      ExperimentConfig& cfg) {
  if (key == "experiment") cfg.experiment = value;
  else if (key == "dist") cfg.dist = value;
  else if (key == "n") cfg.n_values = parse_int_list(key, value);
  else if (key == "m") cfg.m = static_cast<int>(parse_long(key, value));
  else if (key == "kappa") cfg.kappa = parse_real(key, value);
  else if (key == "delta") cfg.delta = parse_real(key, value);
  else if (key == "c") cfg.mask_factor = parse_real(key, value);
  else if (key == "outer") cfg.outer_factor = parse_real(key, value);
  else if (key == "scale") cfg.scale = static_cast<int>(parse_long(key, value));
  else if (key == "reps") cfg.replicates = static_cast<int>(parse_long(key, value));
  else if (key == "seed") cfg.master_seed = std::stoull(value);
  else if (key == "out") cfg.out = value;
  else if (key == "max-seconds") cfg.max_seconds = static_cast<int>(parse_long(key, value));
  else if (key == "threads") cfg.threads = static_cast<int>(parse_long(key, value));
  else if (key == "transform-scale") cfg.transform_scale = parse_real(key, value);
  else if (key == "a") cfg.a = parse_real(key, value);
  else if (key == "good-measure") cfg.good_measure = parse_real(key, value);
  else throw std::invalid_argument("unknown config key: " + key);
}

void load_json_config(const json& j, ExperimentConfig& cfg) {
  auto get = [&j](const char* key) { return j.find(key); };
  if (auto it = get("experiment"); it != j.end()) cfg.experiment = it->get<std::string>();
  if (auto it = get("dist"); it != j.end()) cfg.dist = it->get<std::string>();
  if (auto it = get("n"); it != j.end()) cfg.n_values = it->get<std::vector<int>>();
  if (auto it = get("m"); it != j.end()) cfg.m = it->get<int>();
  if (auto it = get("kappa"); it != j.end()) cfg.kappa = it->get<double>();
  if (auto it = get("delta"); it != j.end()) cfg.delta = it->get<double>();
  if (auto it = get("c"); it != j.end()) cfg.mask_factor = it->get<double>();
  if (auto it = get("outer"); it != j.end()) cfg.outer_factor = it->get<double>();
  if (auto it = get("scale"); it != j.end()) cfg.scale = it->get<int>();
  if (auto it = get("reps"); it != j.end()) cfg.replicates = it->get<int>();
  if (auto it = get("seed"); it != j.end()) cfg.master_seed = it->get<std::uint64_t>();
  if (auto it = get("out"); it != j.end()) cfg.out = it->get<std::string>();
  if (auto it = get("max-seconds"); it != j.end()) cfg.max_seconds = it->get<int>();
  if (auto it = get("threads"); it != j.end()) cfg.threads = it->get<int>();
  if (auto it = get("transform-scale"); it != j.end()) cfg.transform_scale = it->get<double>();
  if (auto it = get("a"); it != j.end()) cfg.a = it->get<double>();
  if (auto it = get("good-measure"); it != j.end()) cfg.good_measure = it->get<double>();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "three-point-gap", "time-constant", "midpoint",       "confinement",
      "good-ratio",      "claim1",        "claim2",         "goal-chain",
      "mw-certificate",  "tau-norm"};
  return names;
}

void validate_config(const ExperimentConfig& cfg) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
  try {
    WeightDistribution::parse(cfg.dist);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("dist: ") + e.what());
  }
  if (cfg.n_values.empty()) throw std::invalid_argument("n: empty list");
  for (int n : cfg.n_values)
    if (n < 0) throw std::invalid_argument("n: negative entry");
  const bool tau_dependent =
      cfg.experiment == "claim1" || cfg.experiment == "claim2" ||
      cfg.experiment == "goal-chain" || cfg.experiment == "tau-norm";
  if (tau_dependent && !(cfg.kappa > 0.0 && cfg.kappa < 0.5))
    throw std::invalid_argument(
        "kappa: must lie in (0, 1/2) so the shift exponent 1/2 - kappa stays "
        "positive");
  if (cfg.delta < 0.0) throw std::invalid_argument("delta: must be >= 0");
  if (!(cfg.mask_factor > 1.0)) throw std::invalid_argument("c: must exceed 1");
  if (cfg.outer_factor != 0.0 && !(cfg.outer_factor > cfg.mask_factor))
    throw std::invalid_argument("outer: must exceed c");
  if (cfg.scale < 0) throw std::invalid_argument("scale: must be >= 0");
  if (cfg.m < 0) throw std::invalid_argument("m: must be >= 0");
  if (cfg.replicates < 1) throw std::invalid_argument("reps: must be >= 1");
  if (cfg.max_seconds < 0) throw std::invalid_argument("max-seconds: must be >= 0");
  if (cfg.threads < 1) throw std::invalid_argument("threads: must be >= 1");
  if (!(cfg.transform_scale > 0.0))
    throw std::invalid_argument("transform-scale: must be positive");
  if (!(cfg.a > 0.0 && cfg.a <= 1.0))
    throw std::invalid_argument("a: must lie in (0, 1]");
  if (cfg.good_measure < 0.0 || cfg.good_measure >= 1.0)
    throw std::invalid_argument("good-measure: must lie in [0, 1)");
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config file unreadable: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("config JSON: ") + e.what());
    }
    load_json_config(j, cfg);
    return;
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    apply_config_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), cfg);
  }
}

std::string sidecar_path(const std::string& out_csv) {
  std::filesystem::path p(out_csv);
  std::filesystem::path side = p;
  side.replace_extension(".json");
  if (side == p) side = p.string() + ".config.json";
  return side.string();
}

int run_experiment(const ExperimentConfig& cfg, std::string* error) {
  std::string local;
  if (!error) error = &local;
  try {
    validate_config(cfg);
  } catch (const std::exception& e) {
    *error = e.what();
    return 2;
  }
  const WeightDistribution dist = WeightDistribution::parse(cfg.dist);
  RunState st(cfg);
  int code = 0;
  try {
    const std::string& x = cfg.experiment;
    if (x == "three-point-gap") run_three_point_gap(st, dist);
    else if (x == "time-constant") run_time_constant(st, dist);
    else if (x == "midpoint") run_midpoint(st, dist);
    else if (x == "confinement") run_confinement(st, dist);
    else if (x == "good-ratio") run_good_ratio(st, dist);
    else if (x == "claim1") run_claims(st, dist, 1);
    else if (x == "claim2") run_claims(st, dist, 2);
    else if (x == "goal-chain") run_goal_chain_exp(st, dist);
    else if (x == "mw-certificate") run_mw_certificate(st, dist);
    else if (x == "tau-norm") run_tau_norm(st);
  } catch (const CertificateError& e) {
    code = 1;
    *error = e.what();
  } catch (const std::exception& e) {
    code = 2;
    *error = e.what();
  }
  if (st.incomplete) st.push_raw(0, "incomplete", 1.0, 0.0, 0);
  if (!write_outputs(st, error)) return 3;
  return code;
}

std::vector<ResultRow> read_result_rows(const std::string& csv_path) {
  std::ifstream f(csv_path);
  if (!f) throw std::runtime_error("cannot read: " + csv_path);
  std::string line;
  if (!std::getline(f, line))
    throw std::invalid_argument("empty results file: " + csv_path);
  if (trim(line) !=
      "experiment,param_json_ref,n,statistic,value,stderr,replicates,seed,wall_ms")
    throw std::invalid_argument("unexpected header in: " + csv_path);
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 9)
      throw std::invalid_argument(csv_path + ":" + std::to_string(lineno) +
                                  ": expected 9 columns");
    ResultRow r;
    r.experiment = parts[0];
    r.param_json_ref = parts[1];
    r.n = static_cast<int>(parse_long("n", parts[2]));
    r.statistic = parts[3];
    r.value = parse_real("value", parts[4]);
    r.stderr_ = parse_real("stderr", parts[5]);
    r.replicates = static_cast<int>(parse_long("replicates", parts[6]));
    r.seed = std::stoull(parts[7]);
    r.wall_ms = parse_long("wall_ms", parts[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

int emit_plot_data(const std::string& in_csv, const std::string& x_spec,
                   const std::string& statistic, const std::string& out_path,
                   std::string* error) {
  std::string local;
  if (!error) error = &local;
  if (x_spec != "n" && x_spec != "logn" && x_spec != "logn-pow") {
    *error = "x must be one of n, logn, logn-pow";
    return 2;
  }
  std::vector<ResultRow> rows;
  try {
    rows = read_result_rows(in_csv);
  } catch (const std::invalid_argument& e) {
    *error = e.what();
    return 2;
  } catch (const std::exception& e) {
    *error = e.what();
    return 3;
  }
  std::vector<ResultRow> picked;
  for (auto& r : rows)
    if (r.statistic == statistic) picked.push_back(r);
  if (picked.empty()) {
    *error = "statistic not present in results: " + statistic;
    return 2;
  }

  double exponent = 1.0;
  if (x_spec == "logn-pow") {
    const std::filesystem::path side =
        std::filesystem::path(in_csv).parent_path() / picked.front().param_json_ref;
    std::ifstream sf(side);
    if (!sf) {
      *error = "cannot read sidecar for kappa: " + side.string();
      return 3;
    }
    try {
      json j = json::parse(sf);
      exponent = 0.5 - j.at("kappa").get<double>();
    } catch (const std::exception& e) {
      *error = std::string("sidecar: ") + e.what();
      return 2;
    }
  }

  std::ofstream out(out_path);
  if (out) {
    out << "x,value\n";
    for (const auto& r : picked) {
      double x = static_cast<double>(r.n);
      if (x_spec != "n") {
        if (r.n < 1) {
          *error = "log abscissa needs n >= 1, found n=" + std::to_string(r.n);
          return 2;
        }
        x = std::log(static_cast<double>(r.n));
        if (x_spec == "logn-pow") x = std::pow(x, exponent);
      }
      out << fmt17(x) << ',' << fmt17(r.value) << '\n';
    }
  }
  if (!out) {
    *error = "cannot write plot data: " + out_path;
    return 3;
  }
  return 0;
}

}  // namespace fpplab
