#include "fpplab/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fpplab {

int linf_norm(Vertex v) { return std::max(std::abs(v.x), std::abs(v.y)); }

int l1_norm(Vertex v) { return std::abs(v.x) + std::abs(v.y); }

EdgeId edge_between(Vertex a, Vertex b) {
  if (b < a) std::swap(a, b);
  const Vertex d = b - a;
  if (d.x == 1 && d.y == 0) return {a, Axis::horizontal};
  if (d.x == 0 && d.y == 1) return {a, Axis::vertical};
  throw std::invalid_argument("edge_between: vertices are not lattice neighbors");
}

bool BoxSpec::contains(Vertex v) const {
  return linf_norm(v - center) <= radius;
}

bool BoxSpec::contains(const EdgeId& e) const {
  return contains(e.base) && contains(e.head());
}

bool BoxSpec::contains_box(const BoxSpec& inner) const {
  return linf_norm(inner.center - center) + inner.radius <= radius;
}

int annulus_of_vertex(Vertex v, Vertex center) { return linf_norm(v - center); }

int annulus_of_edge(const EdgeId& e, Vertex center) {
  return std::max(annulus_of_vertex(e.base, center),
                  annulus_of_vertex(e.head(), center));
}

std::int64_t annulus_vertex_count(int k) {
  if (k < 0) throw std::invalid_argument("annulus_vertex_count: k < 0");
  return k == 0 ? 1 : 8LL * k;
}

std::vector<EdgeId> edges_of_box(const BoxSpec& box) {
  if (box.radius < 0) throw std::invalid_argument("edges_of_box: negative radius");
  std::vector<EdgeId> edges;
  edges.reserve(static_cast<std::size_t>(box_edge_count(box.radius)));
  const int lo_x = box.center.x - box.radius, hi_x = box.center.x + box.radius;
  const int lo_y = box.center.y - box.radius, hi_y = box.center.y + box.radius;
  for (int x = lo_x; x <= hi_x; ++x) {
    for (int y = lo_y; y <= hi_y; ++y) {
      if (x + 1 <= hi_x) edges.push_back({{x, y}, Axis::horizontal});
      if (y + 1 <= hi_y) edges.push_back({{x, y}, Axis::vertical});
    }
  }
  return edges;
}

std::int64_t box_edge_count(int radius) {
  if (radius < 0) throw std::invalid_argument("box_edge_count: negative radius");
  const std::int64_t side = 2LL * radius + 1;
  return 2 * side * (side - 1);
}

std::int64_t annulus_edge_count(int k) {
  if (k < 0) throw std::invalid_argument("annulus_edge_count: k < 0");
  if (k == 0) return 0;
  return 16LL * k - 4;  // box_edge_count(k) - box_edge_count(k-1)
}

BoxIndexer::BoxIndexer(BoxSpec box) : box_(box), side_(box.side()) {
  if (box.radius < 0) throw std::invalid_argument("BoxIndexer: negative radius");
  h_count_ = static_cast<std::size_t>(side_ - 1) * side_;
  edge_count_ = 2 * h_count_;
}

std::size_t BoxIndexer::vertex_index(Vertex v) const {
  const int ux = v.x - box_.center.x + box_.radius;
  const int uy = v.y - box_.center.y + box_.radius;
  if (ux < 0 || ux >= side_ || uy < 0 || uy >= side_)
    throw std::out_of_range("BoxIndexer: vertex outside box");
  return static_cast<std::size_t>(uy) * side_ + ux;
}

Vertex BoxIndexer::vertex_at(std::size_t idx) const {
  const int ux = static_cast<int>(idx % side_);
  const int uy = static_cast<int>(idx / side_);
  return {box_.center.x - box_.radius + ux, box_.center.y - box_.radius + uy};
}

std::size_t BoxIndexer::edge_index(const EdgeId& e) const {
  const int ux = e.base.x - box_.center.x + box_.radius;
  const int uy = e.base.y - box_.center.y + box_.radius;
  if (e.axis == Axis::horizontal) {
    if (ux < 0 || ux >= side_ - 1 || uy < 0 || uy >= side_)
      throw std::out_of_range("BoxIndexer: edge outside box");
    return h_index(ux, uy);
  }
  if (ux < 0 || ux >= side_ || uy < 0 || uy >= side_ - 1)
    throw std::out_of_range("BoxIndexer: edge outside box");
  return v_index(ux, uy);
}

EdgeId BoxIndexer::edge_at(std::size_t idx) const {
  if (idx >= edge_count_) throw std::out_of_range("BoxIndexer: edge index");
  const Vertex corner{box_.center.x - box_.radius, box_.center.y - box_.radius};
  if (idx < h_count_) {
    const int ux = static_cast<int>(idx % (side_ - 1));
    const int uy = static_cast<int>(idx / (side_ - 1));
    return {{corner.x + ux, corner.y + uy}, Axis::horizontal};
  }
  idx -= h_count_;
  const int ux = static_cast<int>(idx % side_);
  const int uy = static_cast<int>(idx / side_);
  return {{corner.x + ux, corner.y + uy}, Axis::vertical};
}

}  // namespace fpplab
