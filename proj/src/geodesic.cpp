#include "fpplab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace fpplab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Canonical passage time: fold the edge weights starting from the
// lexicographically smaller endpoint of the path.
double canonical_time(const std::vector<EdgeId>& edges,
                      const std::vector<Vertex>& vertices, const Environment& env) {
  double t = 0.0;
  if (vertices.size() >= 2 && vertices.back() < vertices.front()) {
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) t += env.weight(*it);
  } else {
    for (const EdgeId& e : edges) t += env.weight(e);
  }
  return t;
}
}  // namespace

PathRecord make_path_record(std::vector<Vertex> vertices, const Environment& env) {
  if (vertices.empty())
    throw std::invalid_argument("make_path_record: empty vertex sequence");
  PathRecord rec;
  rec.edges.reserve(vertices.size() - 1);
  std::set<EdgeId> seen;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    EdgeId e = edge_between(vertices[i], vertices[i + 1]);
    if (!seen.insert(e).second)
      throw std::invalid_argument("make_path_record: repeated edge");
    rec.edges.push_back(e);
  }
  rec.vertices = std::move(vertices);
  rec.total_time = canonical_time(rec.edges, rec.vertices, env);
  return rec;
}

ShortestPaths::ShortestPaths(const Environment& env, Vertex source,
                             const RegionMask& mask, const std::vector<Vertex>& targets)
    : env_(env), mask_idx_(mask.box), source_(source) {
  if (!mask.box.contains(source))
    throw std::invalid_argument("ShortestPaths: source outside mask");
  if (!env.region().contains_box(mask.box))
    throw std::invalid_argument("ShortestPaths: mask not contained in environment");
  for (Vertex t : targets)
    if (!mask.box.contains(t))
      throw std::invalid_argument("ShortestPaths: target outside mask");

  const std::size_t nv = mask_idx_.vertex_count();
  dist_.assign(nv, kInf);
  pred_.assign(nv, -1);
  settled_.assign(nv, 0);

  std::size_t remaining = targets.size();
  std::vector<char> is_target(remaining ? nv : 0, 0);
  for (Vertex t : targets) is_target[mask_idx_.vertex_index(t)] = 1;

  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  const std::size_t s = mask_idx_.vertex_index(source);
  dist_[s] = 0.0;
  heap.push({0.0, static_cast<std::uint32_t>(s)});

  const BoxIndexer& env_idx = env.indexer();
  while (!heap.empty()) {
    const auto [d, ui] = heap.top();
    heap.pop();
    if (settled_[ui]) continue;
    settled_[ui] = 1;
    if (remaining && is_target[ui] && --remaining == 0) break;
    const Vertex u = mask_idx_.vertex_at(ui);
    mask_idx_.for_each_neighbor(u, [&](Vertex v, std::size_t) {
      const std::size_t vi = mask_idx_.vertex_index(v);
      if (settled_[vi]) return;
      const double w = env_.weight_at(env_idx.edge_index(edge_between(u, v)));
      const double nd = d + w;
      if (nd < dist_[vi]) {
        dist_[vi] = nd;
        pred_[vi] = static_cast<std::int32_t>(ui);
        heap.push({nd, static_cast<std::uint32_t>(vi)});
      } else if (nd == dist_[vi] && pred_[vi] >= 0 &&
                 u < mask_idx_.vertex_at(static_cast<std::size_t>(pred_[vi]))) {
        pred_[vi] = static_cast<std::int32_t>(ui);  // deterministic tie-break
      }
    });
  }
}

double ShortestPaths::time_to(Vertex v) const {
  const std::size_t vi = mask_idx_.vertex_index(v);
  if (!settled_[vi])
    throw std::logic_error("ShortestPaths: vertex was not settled; list it as a target");
  return path_to(v).total_time;
}

PathRecord ShortestPaths::path_to(Vertex v) const {
  const std::size_t vi = mask_idx_.vertex_index(v);
  if (!settled_[vi])
    throw std::logic_error("ShortestPaths: vertex was not settled; list it as a target");
  std::vector<Vertex> vertices;
  std::size_t cur = vi;
  vertices.push_back(mask_idx_.vertex_at(cur));
  while (pred_[cur] >= 0) {
    cur = static_cast<std::size_t>(pred_[cur]);
    vertices.push_back(mask_idx_.vertex_at(cur));
  }
  std::reverse(vertices.begin(), vertices.end());
  return make_path_record(std::move(vertices), env_);
}

PassageResult passage_time(const Environment& env, Vertex a, Vertex b,
                           const RegionMask& mask) {
  if (!mask.box.contains(a) || !mask.box.contains(b))
    throw std::invalid_argument("passage_time: endpoint outside mask");
  ShortestPaths sp(env, a, mask, {b});
  PassageResult out;
  out.path = sp.path_to(b);
  out.time = out.path.total_time;
  return out;
}

bool geodesic_hits_box(const PathRecord& path, const BoxSpec& box) {
  return std::any_of(path.vertices.begin(), path.vertices.end(),
                     [&box](Vertex v) { return box.contains(v); });
}

PathRecord first_exit_prefix(const PathRecord& path, const BoxSpec& box,
                             const Environment& env) {
  if (path.vertices.empty() || !box.contains(path.vertices.front()))
    throw std::invalid_argument("first_exit_prefix: path does not start inside the box");
  for (std::size_t i = 1; i < path.vertices.size(); ++i) {
    if (!box.contains(path.vertices[i])) {
      std::vector<Vertex> prefix(path.vertices.begin(),
                                 path.vertices.begin() + i + 1);
      return make_path_record(std::move(prefix), env);
    }
  }
  throw std::invalid_argument("first_exit_prefix: path never exits the box");
}

int good_edge_count(const PathRecord& path, const Environment& env,
                    const GoodSet& good) {
  int count = 0;
  for (const EdgeId& e : path.edges)
    if (good.contains(env.weight(e))) ++count;
  return count;
}

int min_good_count_to_boundary(const Environment& env, const GoodSet& good, int n) {
  if (n < 1) throw std::invalid_argument("min_good_count_to_boundary: n must be >= 1");
  const BoxSpec box{n, env.region().center};
  if (!env.region().contains_box(box))
    throw std::invalid_argument("min_good_count_to_boundary: box exceeds environment");
  const BoxIndexer idx(box);
  const BoxIndexer& env_idx = env.indexer();
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<int> dist(idx.vertex_count(), kUnset);

  // 0/1-weight shortest path by deque BFS; cost of an edge is 1 iff its
  // weight lies in the good set.
  std::deque<std::size_t> dq;
  const std::size_t s = idx.vertex_index(box.center);
  dist[s] = 0;
  dq.push_back(s);
  while (!dq.empty()) {
    const std::size_t ui = dq.front();
    dq.pop_front();
    const Vertex u = idx.vertex_at(ui);
    const int du = dist[ui];
    if (annulus_of_vertex(u, box.center) == n) continue;  // stop at the sphere
    idx.for_each_neighbor(u, [&](Vertex v, std::size_t) {
      const std::size_t vi = idx.vertex_index(v);
      const double w = env.weight_at(env_idx.edge_index(edge_between(u, v)));
      const int cost = good.contains(w) ? 1 : 0;
      if (du + cost < dist[vi]) {
        dist[vi] = du + cost;
        if (cost == 0)
          dq.push_front(vi);
        else
          dq.push_back(vi);
      }
    });
  }

  int best = kUnset;
  for (std::size_t i = 0; i < idx.vertex_count(); ++i)
    if (annulus_of_vertex(idx.vertex_at(i), box.center) == n)
      best = std::min(best, dist[i]);
  return best;
}

}  // namespace fpplab
