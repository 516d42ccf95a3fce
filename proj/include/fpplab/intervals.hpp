#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace fpplab {

/// Finite union of disjoint closed intervals on the real line, kept sorted.
struct IntervalUnion {
  std::vector<std::pair<double, double>> parts;

  static IntervalUnion single(double a, double b) {
    IntervalUnion u;
    u.add(a, b);
    return u;
  }

  /// Inserts [a, b], merging overlaps. Ignores empty input (a > b).
  void add(double a, double b) {
    if (a > b) return;
    std::vector<std::pair<double, double>> merged;
    bool placed = false;
    for (const auto& [x, y] : parts) {
      if (y < a) {
        merged.emplace_back(x, y);
      } else if (x > b) {
        if (!placed) {
          merged.emplace_back(a, b);
          placed = true;
        }
        merged.emplace_back(x, y);
      } else {
        a = std::min(a, x);
        b = std::max(b, y);
      }
    }
    if (!placed) merged.emplace_back(a, b);
    parts = std::move(merged);
  }

  bool contains(double w) const {
    for (const auto& [a, b] : parts)
      if (w >= a && w <= b) return true;
    return false;
  }

  bool empty() const { return parts.empty(); }

  double total_length() const {
    double s = 0;
    for (const auto& [a, b] : parts) s += b - a;
    return s;
  }
};

}  // namespace fpplab
