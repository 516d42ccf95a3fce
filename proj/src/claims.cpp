#include "fpplab/claims.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fpplab/rng.hpp"

namespace fpplab {

namespace {
double prefix_tau_sum(const PathRecord& path, const CoupledPair& pair) {
  double sum = 0.0;
  for (const EdgeId& e : path.edges) {
    const double tau = pair.field.value(e);
    if (tau > 0.0 && pair.good.contains(pair.base.weight(e))) sum += tau;
  }
  return sum;
}

bool path_stays_in(const PathRecord& path, const BoxSpec& box) {
  return std::all_of(path.vertices.begin(), path.vertices.end(),
                     [&box](Vertex v) { return box.contains(v); });
}
}  // namespace

CoupledPair make_coupled_pair(const BoxSpec& region,
                              const WeightDistribution& dist,
                              std::uint64_t seed, const TauField& field,
                              const WeightTransform& transform,
                              const GoodSet& good) {
  Environment base = sample_environment(region, dist, seed);
  Environment lifted =
      apply_transform(base, field, transform, TransformDirection::forward);

  const BoxIndexer& idx = base.indexer();
  for (std::size_t i = 0; i < idx.edge_count(); ++i) {
    const double b = base.weight_at(i);
    const double l = lifted.weight_at(i);
    if (l < b) {
      std::ostringstream msg;
      msg << "coupled pair: lifted weight " << l << " below base " << b
          << " at edge " << i;
      throw CertificateError(msg.str());
    }
    if (field.value(idx.edge_at(i)) == 0.0 && l != b)
      throw CertificateError("coupled pair: untouched edge changed");
  }

  const Environment recovered =
      apply_transform(lifted, field, transform, TransformDirection::inverse);
  for (std::size_t i = 0; i < idx.edge_count(); ++i) {
    if (std::abs(recovered.weight_at(i) - base.weight_at(i)) > 1e-10) {
      std::ostringstream msg;
      msg << "coupled pair: inverse transform misses base by "
          << recovered.weight_at(i) - base.weight_at(i) << " at edge " << i;
      throw CertificateError(msg.str());
    }
  }

  return CoupledPair{std::move(base), std::move(lifted), field, good, transform};
}

double analytic_annulus_floor(double a, double kappa, int m, int scale) {
  if (m < 2 || scale < 1) return 0.0;
  const double p = 0.5 - kappa;
  return a / p * (std::pow(std::log(m), p) - std::pow(std::log(scale), p));
}

AnnulusSumReport annulus_sum_lower_bound(const PathRecord& path,
                                         const CoupledPair& pair, int scale,
                                         double a) {
  const int m = pair.field.inner_radius();
  const Vertex center = pair.field.center();
  if (path.vertices.empty() || path.vertices.front() != center)
    throw std::invalid_argument("annulus sum: path must start at the field center");
  if (annulus_of_vertex(path.vertices.back(), center) <= m)
    throw std::invalid_argument("annulus sum: path must end outside the field");
  if (scale < 1) scale = std::max(1, static_cast<int>(std::ceil(std::sqrt(m))));

  AnnulusSumReport rep;
  rep.scale = scale;
  rep.a = a;
  rep.tau_sum = prefix_tau_sum(path, pair);
  rep.analytic_floor = analytic_annulus_floor(a, pair.field.kappa(), m, scale);

  // First-visit indices of radius j*scale for j = 0..J; the bands between
  // consecutive first visits are edge-disjoint.
  const int bands = m / scale;
  std::vector<std::size_t> first_visit(static_cast<std::size_t>(bands) + 1, 0);
  int next = 1;
  for (std::size_t i = 0; i < path.vertices.size() && next <= bands; ++i) {
    while (next <= bands &&
           annulus_of_vertex(path.vertices[i], center) >= next * scale) {
      first_visit[static_cast<std::size_t>(next)] = i;
      ++next;
    }
  }
  if (next <= bands)
    throw std::logic_error("annulus sum: crossing decomposition incomplete");

  const std::int64_t threshold =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(a * scale)));
  rep.crossings_ok = bands >= 1;
  rep.min_crossing_ratio = bands >= 1 ? 1e300 : 0.0;
  for (int j = 0; j < bands; ++j) {
    std::int64_t count = 0;
    for (std::size_t i = first_visit[static_cast<std::size_t>(j)];
         i < first_visit[static_cast<std::size_t>(j) + 1]; ++i)
      if (pair.good.contains(pair.base.weight(path.edges[i]))) ++count;
    rep.crossing_good_counts.push_back(count);
    rep.crossings_ok = rep.crossings_ok && count >= threshold;
    rep.min_crossing_ratio = std::min(
        rep.min_crossing_ratio, static_cast<double>(count) / scale);
  }
  return rep;
}

ClaimReport verify_claim1(const CoupledPair& pair, int n, int m, int scale,
                          double a) {
  if (m != pair.field.inner_radius())
    throw std::invalid_argument("claim 1: m does not match the field");
  if (n <= m) throw std::invalid_argument("claim 1: need n > m");
  const Vertex c = pair.field.center();
  const Vertex target{c.x + n, c.y};
  const RegionMask mask{pair.base.region()};

  const PassageResult lifted_res = passage_time(pair.lifted, c, target, mask);
  const PassageResult base_res = passage_time(pair.base, c, target, mask);
  const PathRecord prefix =
      first_exit_prefix(lifted_res.path, BoxSpec{m, c}, pair.lifted);

  ClaimReport rep;
  rep.n = n;
  rep.m = m;
  rep.kappa = pair.field.kappa();
  rep.delta = pair.good.delta;
  rep.annulus = annulus_sum_lower_bound(prefix, pair, scale, a);
  rep.lhs = lifted_res.time - base_res.time;
  rep.rhs = rep.delta * rep.annulus.tau_sum;
  rep.pass = rep.lhs >= rep.rhs - 1e-9;
  return rep;
}

ClaimReport verify_claim2(const CoupledPair& pair, int n, int m) {
  if (m != pair.field.inner_radius())
    throw std::invalid_argument("claim 2: m does not match the field");
  if (n <= m) throw std::invalid_argument("claim 2: need n > m");
  const Vertex c = pair.field.center();
  const Vertex left{c.x - n, c.y};
  const Vertex right{c.x + n, c.y};
  const RegionMask mask{pair.base.region()};
  const BoxSpec inner{m, c};

  const PassageResult lifted_res = passage_time(pair.lifted, left, right, mask);
  const PassageResult base_res = passage_time(pair.base, left, right, mask);

  ClaimReport rep;
  rep.n = n;
  rep.m = m;
  rep.kappa = pair.field.kappa();
  rep.delta = pair.good.delta;
  rep.triggered = !geodesic_hits_box(lifted_res.path, inner) &&
                  !geodesic_hits_box(base_res.path, inner);
  rep.lhs = std::abs(lifted_res.time - base_res.time);
  rep.rhs = 1e-10;
  rep.pass = !rep.triggered || rep.lhs <= rep.rhs;
  return rep;
}

GoalChainResult run_goal_chain(const GoalChainConfig& cfg) {
  const MonteCarloConfig& mc = cfg.mc;
  if (mc.replicates < 1) throw std::invalid_argument("replicates must be positive");
  if (mc.n_values.empty()) throw std::invalid_argument("empty n list");
  if (!(mc.mask_factor > 1.0))
    throw std::invalid_argument("mask factor C must exceed 1");
  const double outer =
      mc.outer_factor > 0.0 ? mc.outer_factor : mc.mask_factor + 1.0;
  if (!(outer > mc.mask_factor))
    throw std::invalid_argument("outer factor must exceed the mask factor");
  for (int n : mc.n_values)
    if (n <= cfg.m)
      throw std::invalid_argument("goal chain: need n > m for every n");

  const WeightTransform transform(mc.dist, cfg.transform_scale);
  const double delta =
      cfg.delta > 0.0 ? cfg.delta : choose_delta(transform, 0.5);
  const GoodSet good = build_good_set(transform, delta);
  const TauField field = build_tau_field(cfg.m, cfg.kappa, {0, 0});

  GoalChainResult result;
  result.delta_used = delta;
  result.nu_good = good.nu;

  for (int n : mc.n_values) {
    const BoxSpec outer_box{scaled_radius(outer, n), {0, 0}};
    const BoxSpec keep{scaled_radius(mc.mask_factor, n), {0, 0}};
    const BoxSpec inner{cfg.m, {0, 0}};
    const Vertex left{-n, 0}, mid{0, 0}, right{n, 0};

    std::vector<GoalChainReplicate> reps(mc.replicates);
    parallel_for(mc.replicates, mc.threads, [&](std::size_t r) {
      const auto seed = derive_seed(mc.master_seed, n, static_cast<int>(r));
      const CoupledPair pair =
          make_coupled_pair(outer_box, mc.dist, seed, field, transform, good);
      GoalChainReplicate& rep = reps[r];

      ShortestPaths o_left(pair.lifted, left, RegionMask{outer_box}, {mid, right});
      ShortestPaths o_mid(pair.lifted, mid, RegionMask{outer_box}, {right});
      rep.a2 = path_stays_in(o_left.path_to(right), keep) &&
               path_stays_in(o_left.path_to(mid), keep) &&
               path_stays_in(o_mid.path_to(right), keep);

      ShortestPaths k_left(pair.lifted, left, RegionMask{keep}, {mid, right});
      ShortestPaths k_mid(pair.lifted, mid, RegionMask{keep}, {right});
      const PathRecord lifted_span = k_left.path_to(right);
      rep.gap = k_left.time_to(mid) + k_mid.time_to(right) - lifted_span.total_time;

      const PassageResult base_span = passage_time(pair.base, left, right,
                                                   RegionMask{keep});
      rep.a1 = !geodesic_hits_box(lifted_span, inner) &&
               !geodesic_hits_box(base_span.path, inner);

      const PathRecord prefix =
          first_exit_prefix(k_mid.path_to(right), inner, pair.lifted);
      rep.tau_sum = prefix_tau_sum(prefix, pair);
      rep.tau_pos = rep.tau_sum > 0.0;

      if (rep.gap < -1e-9) {
        std::ostringstream msg;
        msg << "goal chain: negative gap " << rep.gap << " at n=" << n
            << " seed=" << seed;
        throw CertificateError(msg.str());
      }
      // The equality of claim 2 plus the edgewise bound of claim 1 make the
      // restricted gap dominate delta*tau_sum whenever both geodesics avoid
      // the field region, independently of confinement.
      if (rep.a1 && rep.gap < delta * rep.tau_sum - 1e-9) {
        std::ostringstream msg;
        msg << "goal chain: gap " << rep.gap << " below certified floor "
            << delta * rep.tau_sum << " at n=" << n << " seed=" << seed;
        throw CertificateError(msg.str());
      }
    });

    std::vector<double> joint01(reps.size()), a101(reps.size()),
        a201(reps.size()), tau01(reps.size());
    std::vector<double> cond_gap, cond_tau;
    double margin_min = 1e300;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      joint01[i] = reps[i].joint() ? 1.0 : 0.0;
      a101[i] = reps[i].a1 ? 1.0 : 0.0;
      a201[i] = reps[i].a2 ? 1.0 : 0.0;
      tau01[i] = reps[i].tau_pos ? 1.0 : 0.0;
      if (reps[i].joint()) {
        cond_gap.push_back(reps[i].gap);
        cond_tau.push_back(reps[i].tau_sum);
        margin_min = std::min(margin_min, reps[i].gap - delta * reps[i].tau_sum);
      }
    }
    auto& rec = result.records;
    rec.push_back(summarize("chain_event_rate", n, joint01, mc.master_seed));
    rec.push_back(summarize("a1_rate", n, a101, mc.master_seed));
    rec.push_back(summarize("a2_rate", n, a201, mc.master_seed));
    rec.push_back(summarize("tau_pos_rate", n, tau01, mc.master_seed));
    if (!cond_gap.empty()) {
      rec.push_back(summarize("conditional_gap", n, cond_gap, mc.master_seed));
      rec.push_back(summarize("conditional_tau_sum", n, cond_tau, mc.master_seed));
      EstimateRecord margin;
      margin.observable = "chain_margin_min";
      margin.n = n;
      margin.mean = margin_min;
      margin.ci95 = {margin_min, margin_min};
      margin.replicates = static_cast<int>(cond_gap.size());
      margin.master_seed = mc.master_seed;
      rec.push_back(margin);
    }
  }
  return result;
}

}  // namespace fpplab
