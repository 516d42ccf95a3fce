#pragma once

#include <cstdint>
#include <vector>

#include "fpplab/distributions.hpp"
#include "fpplab/lattice.hpp"

namespace fpplab {

/// An immutable edge-weight configuration ω on a box region, together with
/// its provenance (distribution and seed). Weight lookup is O(1) through
/// the region's dense edge index.
class Environment {
 public:
  /// Wraps an explicit weight vector (indexed like BoxIndexer edges).
  /// Used by the transform machinery and by test fixtures.
  Environment(BoxSpec region, WeightDistribution dist, std::uint64_t seed,
              std::vector<double> weights);

  const BoxSpec& region() const { return indexer_.box(); }
  const BoxIndexer& indexer() const { return indexer_; }
  const WeightDistribution& dist() const { return dist_; }
  std::uint64_t seed() const { return seed_; }

  double weight(const EdgeId& e) const { return weights_[indexer_.edge_index(e)]; }
  double weight_at(std::size_t edge_index) const { return weights_[edge_index]; }
  bool has_edge(const EdgeId& e) const { return indexer_.contains(e); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  BoxIndexer indexer_;
  WeightDistribution dist_;
  std::uint64_t seed_;
  std::vector<double> weights_;
};

/// Samples i.i.d. weights for every edge of the region by inverse-transform
/// sampling from a counter-based stream keyed by (seed, canonical edge).
/// The result depends only on (region, dist, seed): the same edge gets the
/// same weight regardless of enumeration order, worker count, or region
/// (as long as the seed matches).
Environment sample_environment(const BoxSpec& region, const WeightDistribution& dist,
                               std::uint64_t seed);

}  // namespace fpplab
