#include "fpplab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fpplab/geodesic.hpp"
#include "fpplab/rng.hpp"

namespace fpplab {

namespace {
void check_config(const MonteCarloConfig& cfg, int min_n) {
  if (cfg.replicates < 1)
    throw std::invalid_argument("replicates must be positive");
  if (cfg.n_values.empty()) throw std::invalid_argument("empty n list");
  for (int n : cfg.n_values)
    if (n < min_n)
      throw std::invalid_argument("n must be >= " + std::to_string(min_n));
  if (!(cfg.mask_factor > 1.0))
    throw std::invalid_argument("mask factor C must exceed 1");
}

bool path_stays_in(const PathRecord& path, const BoxSpec& box) {
  return std::all_of(path.vertices.begin(), path.vertices.end(),
                     [&box](Vertex v) { return box.contains(v); });
}
}  // namespace

int scaled_radius(double factor, int n) {
  return std::max(1, static_cast<int>(std::ceil(factor * n)));
}

std::vector<EstimateRecord> estimate_three_point_gap(const MonteCarloConfig& cfg) {
  check_config(cfg, 0);
  std::vector<EstimateRecord> out;
  for (int n : cfg.n_values) {
    const BoxSpec region{scaled_radius(cfg.mask_factor, n), {0, 0}};
    std::vector<double> gaps(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
      const auto seed = derive_seed(cfg.master_seed, n, static_cast<int>(r));
      const Environment env = sample_environment(region, cfg.dist, seed);
      const RegionMask mask{region};
      const Vertex left{-n, 0}, mid{0, 0}, right{n, 0};
      ShortestPaths from_left(env, left, mask, {mid, right});
      ShortestPaths from_mid(env, mid, mask, {right});
      const double gap = from_left.time_to(mid) + from_mid.time_to(right) -
                         from_left.time_to(right);
      if (gap < -1e-9) {
        std::ostringstream msg;
        msg << "three-point gap " << gap << " < 0 at n=" << n << " seed=" << seed;
        throw CertificateError(msg.str());
      }
      gaps[r] = gap;
    });
    out.push_back(summarize("three_point_gap", n, gaps, cfg.master_seed));
  }
  return out;
}

TimeConstantEstimate estimate_time_constant(const MonteCarloConfig& cfg,
                                            Axis direction) {
  check_config(cfg, 1);
  TimeConstantEstimate est;
  for (int n : cfg.n_values) {
    const BoxSpec region{scaled_radius(cfg.mask_factor, n), {0, 0}};
    const Vertex target =
        direction == Axis::horizontal ? Vertex{n, 0} : Vertex{0, n};
    std::vector<double> ratios(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
      const auto seed = derive_seed(cfg.master_seed, n, static_cast<int>(r));
      const Environment env = sample_environment(region, cfg.dist, seed);
      ShortestPaths sp(env, {0, 0}, RegionMask{region}, {target});
      ratios[r] = sp.time_to(target) / static_cast<double>(n);
    });
    est.records.push_back(summarize("time_over_n", n, ratios, cfg.master_seed));
  }
  est.mu_hat = est.records.front().mean;
  for (const auto& rec : est.records) est.mu_hat = std::min(est.mu_hat, rec.mean);
  return est;
}

std::vector<EstimateRecord> midpoint_avoidance_probability(
    const MonteCarloConfig& cfg, int m) {
  check_config(cfg, 1);
  if (m < 0) throw std::invalid_argument("midpoint radius m must be >= 0");
  for (int n : cfg.n_values)
    if (m > n)
      throw std::invalid_argument("midpoint radius m must not exceed n");
  std::vector<EstimateRecord> out;
  for (int n : cfg.n_values) {
    const BoxSpec region{scaled_radius(cfg.mask_factor, n), {0, 0}};
    const BoxSpec inner{m, {0, 0}};
    std::vector<double> avoid(cfg.replicates), origin(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
      const auto seed = derive_seed(cfg.master_seed, n, static_cast<int>(r));
      const Environment env = sample_environment(region, cfg.dist, seed);
      const PassageResult res =
          passage_time(env, {-n, 0}, {n, 0}, RegionMask{region});
      const bool hits = m > 0 && geodesic_hits_box(res.path, inner);
      avoid[r] = hits ? 0.0 : 1.0;
      origin[r] = geodesic_hits_box(res.path, BoxSpec{0, {0, 0}}) ? 1.0 : 0.0;
    });
    out.push_back(summarize("midpoint_avoidance", n, avoid, cfg.master_seed));
    std::vector<double> hit(avoid.size());
    for (std::size_t i = 0; i < avoid.size(); ++i) hit[i] = 1.0 - avoid[i];
    out.push_back(summarize("midpoint_hit", n, hit, cfg.master_seed));
    out.push_back(summarize("origin_hit", n, origin, cfg.master_seed));
  }
  return out;
}

std::vector<EstimateRecord> confinement_probability(const MonteCarloConfig& cfg) {
  check_config(cfg, 1);
  const double outer =
      cfg.outer_factor > 0.0 ? cfg.outer_factor : cfg.mask_factor + 1.0;
  if (!(outer > cfg.mask_factor))
    throw std::invalid_argument(
        "outer factor must exceed the mask factor or escapes are invisible");
  std::vector<EstimateRecord> out;
  for (int n : cfg.n_values) {
    const BoxSpec region{scaled_radius(outer, n), {0, 0}};
    const BoxSpec keep{scaled_radius(cfg.mask_factor, n), {0, 0}};
    std::vector<double> confined(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
      const auto seed = derive_seed(cfg.master_seed, n, static_cast<int>(r));
      const Environment env = sample_environment(region, cfg.dist, seed);
      const RegionMask mask{region};
      const Vertex left{-n, 0}, mid{0, 0}, right{n, 0};
      ShortestPaths from_left(env, left, mask, {mid, right});
      ShortestPaths from_mid(env, mid, mask, {right});
      const bool ok = path_stays_in(from_left.path_to(right), keep) &&
                      path_stays_in(from_left.path_to(mid), keep) &&
                      path_stays_in(from_mid.path_to(right), keep);
      confined[r] = ok ? 1.0 : 0.0;
    });
    out.push_back(summarize("confinement", n, confined, cfg.master_seed));
  }
  return out;
}

GoodRatioEstimate good_ratio_estimate(const MonteCarloConfig& cfg,
                                      const GoodSet& good) {
  check_config(cfg, 1);
  GoodRatioEstimate est;
  est.below_threshold = !(good.nu > 0.5);
  int largest_n = cfg.n_values.front() - 1;
  for (int n : cfg.n_values) {
    const BoxSpec region{n, {0, 0}};
    std::vector<double> ratios(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
      const auto seed = derive_seed(cfg.master_seed, n, static_cast<int>(r));
      const Environment env = sample_environment(region, cfg.dist, seed);
      const int count = min_good_count_to_boundary(env, good, n);
      ratios[r] = static_cast<double>(count) / static_cast<double>(n);
    });
    est.records.push_back(summarize("good_ratio", n, ratios, cfg.master_seed));
    EstimateRecord min_rec;
    min_rec.observable = "good_ratio_min";
    min_rec.n = n;
    min_rec.mean = *std::min_element(ratios.begin(), ratios.end());
    min_rec.ci95 = {min_rec.mean, min_rec.mean};
    min_rec.replicates = cfg.replicates;
    min_rec.master_seed = cfg.master_seed;
    est.records.push_back(min_rec);
    if (n > largest_n) {
      largest_n = n;
      est.a_hat = min_rec.mean;
    }
  }
  return est;
}

}  // namespace fpplab
