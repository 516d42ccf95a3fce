#pragma once

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>

namespace fpplab {

/// Standard normal CDF. Accurate in the lower tail; use symmetry for the
/// upper tail when the complement matters.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

/// Standard normal density.
inline double normal_pdf(double z) {
  return 0.3989422804014326779 * std::exp(-0.5 * z * z);
}

/// Standard normal quantile. Φ⁻¹(0) = −∞ and Φ⁻¹(1) = +∞.
inline double normal_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  // erfc_inv keeps full precision near p = 0; mirror for p > 1/2.
  if (p <= 0.5) return -1.4142135623730950488 * boost::math::erfc_inv(2.0 * p);
  return 1.4142135623730950488 * boost::math::erfc_inv(2.0 * (1.0 - p));
}

}  // namespace fpplab
