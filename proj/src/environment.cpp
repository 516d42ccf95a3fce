#include "fpplab/environment.hpp"

#include <stdexcept>

#include "fpplab/rng.hpp"

namespace fpplab {

Environment::Environment(BoxSpec region, WeightDistribution dist, std::uint64_t seed,
                         std::vector<double> weights)
    : indexer_(region), dist_(std::move(dist)), seed_(seed), weights_(std::move(weights)) {
  if (weights_.size() != indexer_.edge_count())
    throw std::invalid_argument("Environment: weight vector does not match region");
}

Environment sample_environment(const BoxSpec& region, const WeightDistribution& dist,
                               std::uint64_t seed) {
  if (region.radius < 1)
    throw std::invalid_argument("sample_environment: region radius must be >= 1");
  BoxIndexer idx(region);
  std::vector<double> w(idx.edge_count());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = dist.sample(edge_uniform01(seed, idx.edge_at(i)));
  return Environment(region, dist, seed, std::move(w));
}

}  // namespace fpplab
