#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fpplab {

/// A point of the square lattice.
struct Vertex {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

constexpr Vertex operator+(Vertex a, Vertex b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vertex operator-(Vertex a, Vertex b) { return {a.x - b.x, a.y - b.y}; }

/// ℓ∞ norm of a lattice vector.
int linf_norm(Vertex v);

/// ℓ1 norm of a lattice vector.
int l1_norm(Vertex v);

enum class Axis : std::uint8_t { horizontal = 0, vertical = 1 };

/// Canonical name of a lattice edge. `base` is the lexicographically smaller
/// endpoint (x first, then y); the other endpoint is one step along `axis`.
struct EdgeId {
  Vertex base;
  Axis axis = Axis::horizontal;

  Vertex head() const {
    return axis == Axis::horizontal ? Vertex{base.x + 1, base.y}
                                    : Vertex{base.x, base.y + 1};
  }

  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Canonical edge between two adjacent vertices, in either order.
/// Throws std::invalid_argument if the vertices are not lattice neighbors.
EdgeId edge_between(Vertex a, Vertex b);

/// The box Λ(radius) = {v : ‖v − center‖∞ ≤ radius}.
struct BoxSpec {
  int radius = 0;
  Vertex center;

  bool contains(Vertex v) const;
  bool contains(const EdgeId& e) const;  // both endpoints inside
  /// True if every vertex of `inner` lies in this box.
  bool contains_box(const BoxSpec& inner) const;
  int side() const { return 2 * radius + 1; }

  friend constexpr auto operator<=>(const BoxSpec&, const BoxSpec&) = default;
};

/// Annulus index of a vertex: k = ‖v − center‖∞, so v ∈ ∂Λ(k) and the
/// spheres ∂Λ(0), ∂Λ(1), ... partition every box around `center`.
int annulus_of_vertex(Vertex v, Vertex center);

/// Annulus index of an edge: the max of its endpoint indices. Every edge
/// gets exactly one index and the per-index edge count is Θ(k).
int annulus_of_edge(const EdgeId& e, Vertex center);

/// Number of vertices with annulus index k: 1 for k = 0, 8k otherwise.
std::int64_t annulus_vertex_count(int k);

/// All edges with both endpoints in the box, each exactly once, ordered by
/// (base lexicographic, horizontal before vertical).
std::vector<EdgeId> edges_of_box(const BoxSpec& box);

/// Number of edges with both endpoints in Λ(radius): 2·(2r+1)·2r.
std::int64_t box_edge_count(int radius);

/// Exact number of edges with annulus index k (max-endpoint rule): 16k − 4
/// for k ≥ 1, and 0 for k = 0 (no edge has both endpoints at the center).
std::int64_t annulus_edge_count(int k);

/// Dense vertex/edge indexing for a box, used for weight storage and
/// shortest-path arrays. Vertex index is row-major in local coordinates;
/// horizontal edges come before vertical ones in the edge index space.
class BoxIndexer {
 public:
  explicit BoxIndexer(BoxSpec box);

  const BoxSpec& box() const { return box_; }
  int side() const { return side_; }
  std::size_t vertex_count() const { return static_cast<std::size_t>(side_) * side_; }
  std::size_t edge_count() const { return edge_count_; }

  bool contains(Vertex v) const { return box_.contains(v); }
  bool contains(const EdgeId& e) const { return box_.contains(e); }

  std::size_t vertex_index(Vertex v) const;
  Vertex vertex_at(std::size_t idx) const;
  std::size_t edge_index(const EdgeId& e) const;
  EdgeId edge_at(std::size_t idx) const;

  /// Visits the in-box neighbors of v as f(neighbor, edge_index).
  template <typename F>
  void for_each_neighbor(Vertex v, F&& f) const {
    const int ux = v.x - box_.center.x + box_.radius;
    const int uy = v.y - box_.center.y + box_.radius;
    if (ux + 1 < side_) f(Vertex{v.x + 1, v.y}, h_index(ux, uy));
    if (ux > 0) f(Vertex{v.x - 1, v.y}, h_index(ux - 1, uy));
    if (uy + 1 < side_) f(Vertex{v.x, v.y + 1}, v_index(ux, uy));
    if (uy > 0) f(Vertex{v.x, v.y - 1}, v_index(ux, uy - 1));
  }

 private:
  std::size_t h_index(int ux, int uy) const {
    return static_cast<std::size_t>(uy) * (side_ - 1) + ux;
  }
  std::size_t v_index(int ux, int uy) const {
    return h_count_ + static_cast<std::size_t>(uy) * side_ + ux;
  }

  BoxSpec box_;
  int side_;
  std::size_t h_count_;  // horizontal edges: (side-1)*side
  std::size_t edge_count_;
};

}  // namespace fpplab
