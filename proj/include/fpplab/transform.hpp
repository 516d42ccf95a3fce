#pragma once

#include <cstdint>
#include <vector>

#include "fpplab/distributions.hpp"
#include "fpplab/environment.hpp"
#include "fpplab/intervals.hpp"
#include "fpplab/lattice.hpp"

namespace fpplab {

/// Family of increasing bijections g_σ of the weight support, built by
/// Gaussian quantile coupling:
///
///   g_σ(w) = Q(Φ(Φ⁻¹(F(w)) + shift_scale·σ)),   σ ∈ [0, 1].
///
/// g_0 is the identity, g_σ(w) ≥ w, and g is strictly increasing in both
/// arguments on the interior of the support.
class WeightTransform {
 public:
  explicit WeightTransform(WeightDistribution dist, double shift_scale = 1.0);

  const WeightDistribution& dist() const { return dist_; }
  double shift_scale() const { return shift_scale_; }

  /// g_σ(w). Throws std::domain_error if w is outside the support.
  double g(double sigma, double w) const;
  /// g_σ⁻¹(w).
  double g_inverse(double sigma, double w) const;

 private:
  double shifted(double w, double delta_z) const;

  WeightDistribution dist_;
  double shift_scale_;
};

/// Weight values whose g_σ-shift is certified to be at least δσ for every
/// σ ∈ (0, 1] on the construction grid.
struct GoodSet {
  double delta = 0.0;
  IntervalUnion intervals;
  double nu = 0.0;  // ν-measure of the intervals

  bool contains(double w) const { return intervals.contains(w); }
};

/// Resolution of the good-set scan and certification grids.
struct GoodSetGrid {
  int w_points = 2048;
  int sigma_points = 64;
  /// Tail mass excluded per side when the support is unbounded.
  double tail_cut = 1e-9;
};

/// Builds B_δ by scanning s(w) = min over the σ-grid of (g_σ(w) − w)/σ and
/// keeping {w : s(w) ≥ δ}, shrunk by one grid cell on each side as a safety
/// margin. Throws if no grid point qualifies.
GoodSet build_good_set(const WeightTransform& t, double delta,
                       const GoodSetGrid& grid = {});

/// Largest δ on the scan grid whose good set keeps ν-measure above
/// `target_mass`. Used as the default δ (target 1/2).
double choose_delta(const WeightTransform& t, double target_mass = 0.5,
                    const GoodSetGrid& grid = {});

/// Upper-quantile set {w : F(w) ≥ 1 − mass} with ν-measure exactly `mass`;
/// a plain measurable set for the supercriticality experiments (delta = 0).
GoodSet good_set_upper_mass(const WeightDistribution& dist, double mass);

/// Per-edge shift amplitudes: τ_e = k⁻¹·log(k)^(−1/2−κ) on annulus index
/// k ∈ {2, …, m} around `center`, 0 elsewhere. All values lie in [0, 1].
class TauField {
 public:
  static TauField zero(Vertex center) { return TauField(0, 0.5, center); }

  int inner_radius() const { return m_; }
  double kappa() const { return kappa_; }
  Vertex center() const { return center_; }
  bool is_zero() const { return m_ < 2; }

  /// τ_e; zero outside annuli 2..m.
  double value(const EdgeId& e) const;
  /// τ for annulus index k (0 if k < 2 or k > m).
  double value_at_annulus(int k) const;
  /// Edges with τ_e > 0, i.e. the edges of Λ(m) with annulus index ≥ 2.
  std::vector<EdgeId> support_edges() const;

 private:
  friend TauField build_tau_field(int m, double kappa, Vertex center);
  TauField(int m, double kappa, Vertex center)
      : m_(m), kappa_(kappa), center_(center) {}

  int m_;
  double kappa_;
  Vertex center_;
};

/// Builds the field; requires m ≥ 2 and κ ∈ (0, 1/2).
TauField build_tau_field(int m, double kappa, Vertex center);

/// ‖τ‖² = Σ_e τ_e², summed exactly via per-annulus edge counts. For fixed κ
/// this is nondecreasing in m with geometrically shrinking increments.
double tau_norm_sq(const TauField& field);

enum class TransformDirection { forward, inverse };

/// Applies T_τ (or its inverse) componentwise: forward raises each weight to
/// g_{τ_e}(w_e), inverse lowers it back. Edges with τ_e = 0 are copied
/// bit-for-bit; forward never decreases a weight.
Environment apply_transform(const Environment& env, const TauField& field,
                            const WeightTransform& t, TransformDirection direction);

/// Quadrature certificate for the product-measure inequality
///   ν^n(T_τ(A)) ≥ exp(−‖τ‖²)·ν^n(A)²
/// on a product set A = A_1 × … × A_n of interval unions.
struct MeasureInequalityReport {
  double lhs = 0.0;        // ∏ ν(g_{τ_i}(A_i))
  double rhs = 0.0;        // exp(−Σ τ_i²)·(∏ ν(A_i))²
  double base_measure = 0.0;
  double tau_norm_sq = 0.0;
  bool pass = false;       // lhs ≥ rhs − 1e−8
};

MeasureInequalityReport measure_inequality_certificate(
    const WeightTransform& t, const std::vector<double>& tau,
    const std::vector<IntervalUnion>& sets, double tol = 1e-11);

}  // namespace fpplab
