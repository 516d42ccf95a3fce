#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fpplab/intervals.hpp"

namespace fpplab {

enum class DistKind { uniform, shifted_exponential, triangular };

/// An absolutely continuous edge-weight law with support in [0, ∞):
/// density, CDF (both tails), and closed-form quantiles. Atomic or otherwise
/// degenerate parameterizations are rejected at construction.
class WeightDistribution {
 public:
  static WeightDistribution uniform(double lo, double hi);
  static WeightDistribution shifted_exponential(double shift, double rate);
  static WeightDistribution triangular(double lo, double mode, double hi);

  /// Parses "uniform:lo:hi", "shiftexp:shift:rate" or "tri:lo:mode:hi".
  static WeightDistribution parse(std::string_view spec);

  DistKind kind() const { return kind_; }
  /// Spec string that parses back to this distribution.
  std::string spec() const;

  double density(double w) const;
  double cdf(double w) const;
  /// 1 − F(w), computed without cancellation in the upper tail.
  double cdf_complement(double w) const;
  double quantile(double p) const;
  /// Value w with 1 − F(w) = q, computed without cancellation for small q.
  double quantile_complement(double q) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }  // +inf for shifted exponential
  bool in_support(double w) const { return w >= lo_ && w <= hi_; }

  /// Interior points where the density is not smooth (triangular mode).
  std::vector<double> density_breakpoints() const;

  /// Inverse-transform sample from a uniform variate in (0,1).
  double sample(double u01) const { return quantile(u01); }

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;

 private:
  WeightDistribution(DistKind kind, double a, double b, double c);

  DistKind kind_;
  double a_, b_, c_;  // parameters as given (uniform: lo,hi; shiftexp: shift,rate; tri: lo,mode,hi)
  double lo_, hi_;    // support
};

/// ν-measure of an interval union by adaptive quadrature of the density
/// (intervals are clipped to the support and split at density breakpoints).
double nu_measure(const WeightDistribution& dist, const IntervalUnion& set,
                  double tol = 1e-11);

/// Same measure via CDF differences; serves as an independent cross-check
/// of the quadrature route.
double nu_measure_cdf(const WeightDistribution& dist, const IntervalUnion& set);

}  // namespace fpplab
