#pragma once

#include <cstdint>
#include <vector>

#include "fpplab/distributions.hpp"
#include "fpplab/environment.hpp"
#include "fpplab/stats.hpp"
#include "fpplab/transform.hpp"

namespace fpplab {

/// Shared Monte Carlo plumbing. Replicate r at size n always draws its
/// environment from derive_seed(master_seed, n, r), so results are
/// independent of scheduling and worker count.
struct MonteCarloConfig {
  WeightDistribution dist;
  std::vector<int> n_values;
  int replicates = 1000;
  std::uint64_t master_seed = 1;
  double mask_factor = 2.0;   // C: passage times are restricted to Λ(ceil(C n))
  double outer_factor = 0.0;  // C' for escape detection; <= 0 means C + 1
  int threads = 1;
};

/// Box radius ceil(factor * n), never below 1.
int scaled_radius(double factor, int n);

/// Mean of G_n = T(-n,0) + T(0,n) - T(-n,n) per n. Every sample is checked
/// against the pathwise bound G_n >= 0 (tolerance 1e-9); a violation throws
/// CertificateError since it can only come from a search or summation bug.
std::vector<EstimateRecord> estimate_three_point_gap(const MonteCarloConfig& cfg);

struct TimeConstantEstimate {
  std::vector<EstimateRecord> records;  // mean of T(0,n)/n per n
  /// Smallest per-n mean. Finite-n means only decrease toward the limit,
  /// so this still overestimates it; treat as an upper bound.
  double mu_hat = 0.0;
};

TimeConstantEstimate estimate_time_constant(const MonteCarloConfig& cfg,
                                            Axis direction);

/// Per n, three records: fraction of replicates whose geodesic from (-n,0)
/// to (n,0) misses Λ(m) ("midpoint_avoidance"), the complementary hit rate
/// ("midpoint_hit"), and the rate at which the geodesic passes through the
/// origin itself ("origin_hit"). m = 0 means the empty box: avoidance 1.
std::vector<EstimateRecord> midpoint_avoidance_probability(
    const MonteCarloConfig& cfg, int m);

/// Fraction of replicates where all of γ(-n,n), γ(-n,0), γ(0,n), computed
/// in the outer box Λ(ceil(C' n)), stay inside Λ(ceil(C n)). Requires
/// C' > C, otherwise escapes are undetectable and the estimate is vacuous.
std::vector<EstimateRecord> confinement_probability(const MonteCarloConfig& cfg);

struct GoodRatioEstimate {
  /// Per n: "good_ratio" (mean of min good-edge count to the boundary of
  /// Λ(n), divided by n) and "good_ratio_min" (smallest such ratio seen).
  std::vector<EstimateRecord> records;
  /// Smallest observed ratio at the largest n.
  double a_hat = 0.0;
  /// Set when ν(good) <= 1/2: below the planar bond percolation threshold
  /// p_c = 1/2 the ratio is expected to collapse and a_hat is meaningless.
  bool below_threshold = false;
};

GoodRatioEstimate good_ratio_estimate(const MonteCarloConfig& cfg,
                                      const GoodSet& good);

}  // namespace fpplab
