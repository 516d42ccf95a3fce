#include "fpplab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpplab/normal.hpp"

namespace fpplab {

WeightTransform::WeightTransform(WeightDistribution dist, double shift_scale)
    : dist_(std::move(dist)), shift_scale_(shift_scale) {
  if (!(shift_scale_ > 0))
    throw std::invalid_argument("WeightTransform: shift_scale must be positive");
}

// Maps w to the weight whose normal score is shifted by delta_z, evaluating
// CDF and quantile through whichever tail keeps full precision.
double WeightTransform::shifted(double w, double delta_z) const {
  const double p = dist_.cdf(w);
  const double q = dist_.cdf_complement(w);
  const double z = p <= 0.5 ? normal_quantile(p) : -normal_quantile(q);
  const double zs = z + delta_z;
  if (zs <= 0.0) return dist_.quantile(normal_cdf(zs));
  return dist_.quantile_complement(normal_cdf(-zs));
}

double WeightTransform::g(double sigma, double w) const {
  if (!(sigma >= 0.0 && sigma <= 1.0))
    throw std::domain_error("g_sigma: sigma outside [0,1]");
  if (!dist_.in_support(w)) throw std::domain_error("g_sigma: w outside support");
  if (sigma == 0.0) return w;
  // The coupling guarantees g_sigma(w) >= w; the clamp only absorbs the last
  // ulp of the special-function round trip.
  return std::max(w, shifted(w, shift_scale_ * sigma));
}

double WeightTransform::g_inverse(double sigma, double w) const {
  if (!(sigma >= 0.0 && sigma <= 1.0))
    throw std::domain_error("g_sigma_inverse: sigma outside [0,1]");
  if (!dist_.in_support(w)) throw std::domain_error("g_sigma_inverse: w outside support");
  if (sigma == 0.0) return w;
  return std::min(w, shifted(w, -shift_scale_ * sigma));
}

namespace {

struct ScanPoint {
  double w;
  double s;     // min over sigma grid of (g_sigma(w) - w) / sigma
  double mass;  // nu-mass of the cell represented by this point
};

std::vector<ScanPoint> scan_shift_profile(const WeightTransform& t,
                                          const GoodSetGrid& grid) {
  const auto& dist = t.dist();
  const double lo = dist.support_lo();
  const double hi = std::isinf(dist.support_hi())
                        ? dist.quantile_complement(grid.tail_cut)
                        : dist.support_hi();
  const int nw = grid.w_points;
  const double cell = (hi - lo) / nw;
  std::vector<ScanPoint> points;
  points.reserve(nw);
  for (int i = 0; i < nw; ++i) {
    const double a = lo + cell * i;
    const double b = a + cell;
    const double w = 0.5 * (a + b);  // cell midpoint
    double s = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= grid.sigma_points; ++j) {
      const double sigma = static_cast<double>(j) / grid.sigma_points;
      s = std::min(s, (t.g(sigma, w) - w) / sigma);
    }
    points.push_back({w, s, dist.cdf(b) - dist.cdf(a)});
  }
  return points;
}

GoodSet extract_good_set(const WeightTransform& t, double delta,
                         const std::vector<ScanPoint>& points) {
  // Keep runs of cells with s >= delta, dropping one cell at each run end as
  // a safety margin so interior points inherit the certified shift.
  GoodSet out;
  out.delta = delta;
  const int n = static_cast<int>(points.size());
  int i = 0;
  while (i < n) {
    if (points[i].s < delta) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && points[j].s >= delta) ++j;
    if (j - i >= 3) out.intervals.add(points[i + 1].w, points[j - 2].w);
    i = j;
  }
  if (out.intervals.empty())
    throw std::runtime_error("build_good_set: no weight satisfies the delta shift");
  out.nu = nu_measure(t.dist(), out.intervals);
  return out;
}

}  // namespace

GoodSet build_good_set(const WeightTransform& t, double delta,
                       const GoodSetGrid& grid) {
  if (!(delta > 0)) throw std::invalid_argument("build_good_set: delta must be positive");
  return extract_good_set(t, delta, scan_shift_profile(t, grid));
}

double choose_delta(const WeightTransform& t, double target_mass,
                    const GoodSetGrid& grid) {
  const auto points = scan_shift_profile(t, grid);
  // Largest delta keeping at least target_mass: sweep the s-values from the
  // top, accumulating cell mass.
  std::vector<std::pair<double, double>> by_s;  // (s, mass)
  by_s.reserve(points.size());
  for (const auto& p : points) by_s.emplace_back(p.s, p.mass);
  std::sort(by_s.begin(), by_s.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double mass = 0.0;
  for (const auto& [s, m] : by_s) {
    mass += m;
    if (mass > target_mass && s > 0) {
      // Nudge below the cutoff so the margin cells do not eat the target.
      const double delta = s * 0.999;
      const GoodSet probe = extract_good_set(t, delta, points);
      if (probe.nu > target_mass) return delta;
    }
  }
  throw std::runtime_error("choose_delta: no delta reaches the target mass");
}

GoodSet good_set_upper_mass(const WeightDistribution& dist, double mass) {
  if (!(mass > 0 && mass <= 1))
    throw std::invalid_argument("good_set_upper_mass: mass outside (0,1]");
  GoodSet out;
  out.delta = 0.0;
  const double lo = dist.quantile_complement(mass);
  const double hi = std::isinf(dist.support_hi())
                        ? std::numeric_limits<double>::max()
                        : dist.support_hi();
  out.intervals.add(lo, hi);
  out.nu = mass;
  return out;
}

double TauField::value_at_annulus(int k) const {
  if (k < 2 || k > m_) return 0.0;
  return 1.0 / (static_cast<double>(k) * std::pow(std::log(static_cast<double>(k)),
                                                  0.5 + kappa_));
}

double TauField::value(const EdgeId& e) const {
  if (m_ < 2) return 0.0;
  return value_at_annulus(annulus_of_edge(e, center_));
}

std::vector<EdgeId> TauField::support_edges() const {
  std::vector<EdgeId> out;
  if (m_ < 2) return out;
  for (const EdgeId& e : edges_of_box({m_, center_}))
    if (annulus_of_edge(e, center_) >= 2) out.push_back(e);
  return out;
}

TauField build_tau_field(int m, double kappa, Vertex center) {
  if (m < 2) throw std::invalid_argument("build_tau_field: m must be >= 2");
  if (!(kappa > 0 && kappa < 0.5))
    throw std::invalid_argument("build_tau_field: kappa must lie in (0, 1/2)");
  return TauField(m, kappa, center);
}

double tau_norm_sq(const TauField& field) {
  double total = 0.0;
  for (int k = 2; k <= field.inner_radius(); ++k) {
    const double tau = field.value_at_annulus(k);
    total += static_cast<double>(annulus_edge_count(k)) * tau * tau;
  }
  return total;
}

Environment apply_transform(const Environment& env, const TauField& field,
                            const WeightTransform& t, TransformDirection direction) {
  if (!field.is_zero() &&
      !env.region().contains_box({field.inner_radius(), field.center()}))
    throw std::invalid_argument("apply_transform: field support exceeds the region");
  const BoxIndexer& idx = env.indexer();
  std::vector<double> w(env.weights());
  for (const EdgeId& e : field.support_edges()) {
    const double tau = field.value(e);
    if (tau == 0.0) continue;
    const std::size_t i = idx.edge_index(e);
    w[i] = direction == TransformDirection::forward ? t.g(tau, w[i])
                                                    : t.g_inverse(tau, w[i]);
  }
  return Environment(env.region(), env.dist(), env.seed(), std::move(w));
}

MeasureInequalityReport measure_inequality_certificate(
    const WeightTransform& t, const std::vector<double>& tau,
    const std::vector<IntervalUnion>& sets, double tol) {
  if (tau.size() != sets.size())
    throw std::invalid_argument("measure_inequality_certificate: tau/sets size mismatch");
  MeasureInequalityReport rep;
  rep.lhs = 1.0;
  rep.base_measure = 1.0;
  rep.tau_norm_sq = 0.0;
  const auto& dist = t.dist();
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (!(tau[i] >= 0 && tau[i] <= 1))
      throw std::invalid_argument("measure_inequality_certificate: tau outside [0,1]");
    const double base = nu_measure(dist, sets[i], tol);
    if (!(base > 0))
      throw std::invalid_argument(
          "measure_inequality_certificate: coordinate set has zero measure");
    // Image of an interval union under the increasing bijection g_tau.
    IntervalUnion image;
    for (const auto& [a, b] : sets[i].parts) {
      const double lo = std::max(a, dist.support_lo());
      const double hi = std::isinf(dist.support_hi())
                            ? b
                            : std::min(b, dist.support_hi());
      if (!(lo <= hi)) continue;
      const double ghi = std::isinf(hi) ? hi : t.g(tau[i], hi);
      image.add(t.g(tau[i], lo), ghi);
    }
    rep.lhs *= nu_measure(dist, image, tol);
    rep.base_measure *= base;
    rep.tau_norm_sq += tau[i] * tau[i];
  }
  rep.rhs = std::exp(-rep.tau_norm_sq) * rep.base_measure * rep.base_measure;
  rep.pass = rep.lhs >= rep.rhs - 1e-8;
  return rep;
}

}  // namespace fpplab
