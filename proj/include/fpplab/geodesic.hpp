#pragma once

#include <vector>

#include "fpplab/environment.hpp"
#include "fpplab/lattice.hpp"
#include "fpplab/transform.hpp"

namespace fpplab {

/// A lattice path with its edge list and passage time in a stated
/// environment. The time is the fold of edge weights taken from the
/// lexicographically smaller endpoint, so reversing a path cannot change
/// its reported time.
struct PathRecord {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  double total_time = 0.0;

  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
};

/// Builds a record from a vertex sequence, deriving edges and the canonical
/// time. Throws if consecutive vertices are not adjacent or an edge repeats.
PathRecord make_path_record(std::vector<Vertex> vertices, const Environment& env);

/// Restriction of the search to paths inside a box.
struct RegionMask {
  BoxSpec box;
};

/// Single-source shortest paths (Dijkstra, binary heap) over the masked
/// grid. Ties in the predecessor choice break toward the lexicographically
/// smaller vertex; with absolutely continuous weights ties never occur.
class ShortestPaths {
 public:
  /// Relaxes until all `targets` are settled (or the whole mask when
  /// `targets` is empty).
  ShortestPaths(const Environment& env, Vertex source, const RegionMask& mask,
                const std::vector<Vertex>& targets = {});

  double time_to(Vertex v) const;
  PathRecord path_to(Vertex v) const;
  Vertex source() const { return source_; }

 private:
  const Environment& env_;
  BoxIndexer mask_idx_;
  Vertex source_;
  std::vector<double> dist_;
  std::vector<std::int32_t> pred_;
  std::vector<char> settled_;
};

/// Passage time and geodesic between two vertices among paths inside the
/// mask: T_K(a, b) with K the mask box.
struct PassageResult {
  double time = 0.0;
  PathRecord path;
};

PassageResult passage_time(const Environment& env, Vertex a, Vertex b,
                           const RegionMask& mask);

/// True iff some path vertex lies in the box.
bool geodesic_hits_box(const PathRecord& path, const BoxSpec& box);

/// Maximal prefix of a path up to (and including) its first vertex outside
/// the box. The path must start inside and eventually leave.
PathRecord first_exit_prefix(const PathRecord& path, const BoxSpec& box,
                             const Environment& env);

/// Number of path edges whose weight lies in the good set.
int good_edge_count(const PathRecord& path, const Environment& env,
                    const GoodSet& good);

/// Minimum over all paths from the region center to ∂Λ(n) of the number of
/// good edges used, via a 0/1-weight deque search. Any path leaving Λ(n)
/// must cross ∂Λ(n) first, so restricting the search to Λ(n) is exact.
int min_good_count_to_boundary(const Environment& env, const GoodSet& good, int n);

}  // namespace fpplab
