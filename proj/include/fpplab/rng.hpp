#pragma once

#include <cstdint>

#include "fpplab/lattice.hpp"

namespace fpplab {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Packs the canonical edge name into a 64-bit key (x and y are used as
/// 32-bit two's-complement words, so every edge gets a distinct key).
constexpr std::uint64_t edge_key(const EdgeId& e) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.base.x)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.base.y));
}

/// Counter-based uniform variate on the open interval (0,1), keyed by
/// (seed, edge). Independent of enumeration order and thread scheduling.
inline double edge_uniform01(std::uint64_t seed, const EdgeId& e) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ edge_key(e));
  h = mix64(h ^ static_cast<std::uint64_t>(e.axis));
  return (static_cast<double>(h >> 11) + 0.5) * 0x1p-53;
}

/// Uniform variate on (0,1) from an arbitrary (seed, key, counter) triple,
/// for test fixtures and auxiliary draws.
inline double keyed_uniform01(std::uint64_t seed, std::uint64_t key,
                              std::uint64_t counter = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ key);
  h = mix64(h ^ counter);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1p-53;
}

/// Replicate seed derived from (master_seed, n, replicate index).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                                    std::uint64_t replicate) {
  return mix64(mix64(mix64(master) ^ n) ^ replicate);
}

}  // namespace fpplab
