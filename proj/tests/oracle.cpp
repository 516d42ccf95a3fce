#include "oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fpplab::testing {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distances to `b` over the masked grid by repeated relaxation sweeps.
std::vector<double> relaxation_distances(const Environment& env,
                                         const BoxIndexer& idx, Vertex b) {
  std::vector<double> d(idx.vertex_count(), kInf);
  d[idx.vertex_index(b)] = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t vi = 0; vi < idx.vertex_count(); ++vi) {
      const Vertex v = idx.vertex_at(vi);
      idx.for_each_neighbor(v, [&](Vertex u, std::size_t) {
        const std::size_t ui = idx.vertex_index(u);
        if (d[ui] == kInf) return;
        const double cand = d[ui] + env.weight(edge_between(u, v));
        if (cand < d[vi]) {
          d[vi] = cand;
          changed = true;
        }
      });
    }
  }
  return d;
}

struct Enumerator {
  const Environment& env;
  const BoxIndexer& idx;
  Vertex target;
  const std::vector<double>& to_target;
  double bound;  // starts at the relaxation estimate, tightens to the incumbent
  std::vector<char> on_path;
  std::vector<Vertex> current;
  PathRecord best;
  bool have_best = false;
  // Slack keeps the cut provably safe against summation-order noise; every
  // path within it of the bound is enumerated and compared after the
  // canonical fold.
  static constexpr double kSlack = 1e-9;

  void dfs(Vertex v, double sum) {
    current.push_back(v);
    if (v == target) {
      PathRecord rec = make_path_record(current, env);
      if (!have_best || rec.total_time < best.total_time) {
        best = std::move(rec);
        have_best = true;
        if (best.total_time < bound) bound = best.total_time;
      }
      current.pop_back();
      return;
    }
    const std::size_t vi = idx.vertex_index(v);
    on_path[vi] = 1;
    idx.for_each_neighbor(v, [&](Vertex u, std::size_t) {
      const std::size_t ui = idx.vertex_index(u);
      if (on_path[ui]) return;
      const double w = env.weight(edge_between(v, u));
      if (sum + w + to_target[ui] > bound + kSlack) return;
      dfs(u, sum + w);
    });
    on_path[vi] = 0;
    current.pop_back();
  }
};

}  // namespace

PathRecord exhaustive_geodesic(const Environment& env, Vertex a, Vertex b,
                               const RegionMask& mask) {
  if (!mask.box.contains(a) || !mask.box.contains(b))
    throw std::invalid_argument("exhaustive_geodesic: endpoint outside mask");
  if (!env.region().contains_box(mask.box))
    throw std::invalid_argument("exhaustive_geodesic: mask outside region");
  BoxIndexer idx(mask.box);
  const std::vector<double> to_b = relaxation_distances(env, idx, b);
  const double estimate = to_b[idx.vertex_index(a)];
  if (estimate == kInf)
    throw std::logic_error("exhaustive_geodesic: target unreachable");
  Enumerator en{env, idx, b, to_b, estimate,
                std::vector<char>(idx.vertex_count(), 0), {}, {}, false};
  en.current.reserve(idx.vertex_count());
  en.dfs(a, 0.0);
  return en.best;
}

double monotone_path_upper_bound(const Environment& env, Vertex a, Vertex b) {
  const int nx = std::abs(b.x - a.x);
  const int ny = std::abs(b.y - a.y);
  const int sx = b.x >= a.x ? 1 : -1;
  const int sy = b.y >= a.y ? 1 : -1;
  std::vector<double> d(static_cast<std::size_t>(nx + 1) * (ny + 1), kInf);
  auto at = [&](int i, int j) -> double& {
    return d[static_cast<std::size_t>(j) * (nx + 1) + i];
  };
  auto vertex = [&](int i, int j) { return Vertex{a.x + i * sx, a.y + j * sy}; };
  at(0, 0) = 0.0;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      if (i > 0) {
        const double c = at(i - 1, j) + env.weight(edge_between(vertex(i - 1, j), vertex(i, j)));
        if (c < at(i, j)) at(i, j) = c;
      }
      if (j > 0) {
        const double c = at(i, j - 1) + env.weight(edge_between(vertex(i, j - 1), vertex(i, j)));
        if (c < at(i, j)) at(i, j) = c;
      }
    }
  return at(nx, ny);
}

int bellman_ford_good_count(const Environment& env, const GoodSet& good, int n) {
  const BoxSpec box{n, env.region().center};
  if (!env.region().contains_box(box))
    throw std::invalid_argument("bellman_ford_good_count: box outside region");
  BoxIndexer idx(box);
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<int> d(idx.vertex_count(), kUnset);
  d[idx.vertex_index(box.center)] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t vi = 0; vi < idx.vertex_count(); ++vi) {
      const Vertex v = idx.vertex_at(vi);
      idx.for_each_neighbor(v, [&](Vertex u, std::size_t) {
        const std::size_t ui = idx.vertex_index(u);
        if (d[ui] == kUnset) return;
        const int cost = good.contains(env.weight(edge_between(u, v))) ? 1 : 0;
        if (d[ui] + cost < d[vi]) {
          d[vi] = d[ui] + cost;
          changed = true;
        }
      });
    }
  }
  int result = kUnset;
  for (std::size_t vi = 0; vi < idx.vertex_count(); ++vi)
    if (annulus_of_vertex(idx.vertex_at(vi), box.center) == n)
      result = std::min(result, d[vi]);
  return result;
}

}  // namespace fpplab::testing
