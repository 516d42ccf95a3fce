#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fpplab/environment.hpp"
#include "fpplab/geodesic.hpp"
#include "fpplab/rng.hpp"
#include "fpplab/transform.hpp"
#include "oracle.hpp"

using namespace fpplab;

namespace {

Environment explicit_env(const BoxSpec& region, double fill,
                         const std::vector<std::pair<EdgeId, double>>& overrides) {
  BoxIndexer idx(region);
  std::vector<double> w(idx.edge_count(), fill);
  for (const auto& [e, v] : overrides) w[idx.edge_index(e)] = v;
  return Environment(region, WeightDistribution::uniform(0.5, 200.0), 0, std::move(w));
}

Vertex random_vertex(const BoxSpec& box, std::uint64_t seed, std::uint64_t& c) {
  const int side = box.side();
  const int x = static_cast<int>(keyed_uniform01(seed, 1, c++) * side);
  const int y = static_cast<int>(keyed_uniform01(seed, 2, c++) * side);
  return {box.center.x - box.radius + std::min(x, side - 1),
          box.center.y - box.radius + std::min(y, side - 1)};
}

}  // namespace

TEST_CASE("source to itself is the empty path") {
  auto env = sample_environment(BoxSpec{3, {0, 0}}, WeightDistribution::uniform(1.0, 1.5), 1);
  auto res = passage_time(env, {1, 1}, {1, 1}, RegionMask{env.region()});
  CHECK(res.time == 0.0);
  CHECK(std::ssize(res.path.vertices) == 1);
  CHECK(res.path.edges.empty());
}

TEST_CASE("near-constant weights give straight geodesics") {
  auto env = sample_environment(BoxSpec{6, {0, 0}},
                                WeightDistribution::uniform(1.0, 1.0 + 1e-9), 4);
  auto res = passage_time(env, {0, 0}, {4, 0}, RegionMask{env.region()});
  CHECK(std::ssize(res.path.edges) == 4);
  CHECK(res.time == doctest::Approx(4.0).epsilon(1e-8));
  auto diag = passage_time(env, {-2, -2}, {1, 2}, RegionMask{env.region()});
  CHECK(std::ssize(diag.path.edges) == 7);  // l1 distance
  CHECK(diag.time == doctest::Approx(7.0).epsilon(1e-8));
}

TEST_CASE("unit weights reproduce the l1 metric exactly") {
  auto env = explicit_env(BoxSpec{4, {0, 0}}, 1.0, {});
  auto res = passage_time(env, {-4, -4}, {3, 2}, RegionMask{env.region()});
  CHECK(res.time == 13.0);  // sums of ones are exact
  // determinism: a second search walks the identical path
  auto again = passage_time(env, {-4, -4}, {3, 2}, RegionMask{env.region()});
  CHECK(again.path.vertices == res.path.vertices);
}

TEST_CASE("cheap corridor pulls the geodesic off the straight line") {
  // straight route costs 4, corridor detour costs 6 edges of weight 0.5 = 3
  std::vector<std::pair<EdgeId, double>> cheap;
  for (int x = -2; x < 2; ++x) {
    cheap.push_back({edge_between({x, 1}, {x + 1, 1}), 0.5});
  }
  cheap.push_back({edge_between({-2, 0}, {-2, 1}), 0.5});
  cheap.push_back({edge_between({2, 0}, {2, 1}), 0.5});
  auto env = explicit_env(BoxSpec{3, {0, 0}}, 1.0, cheap);
  auto res = passage_time(env, {-2, 0}, {2, 0}, RegionMask{env.region()});
  CHECK(res.time == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(geodesic_hits_box(res.path, BoxSpec{0, {0, 1}}));
  CHECK(!geodesic_hits_box(res.path, BoxSpec{0, {0, 0}}));
}

TEST_CASE("search agrees with exhaustive enumeration") {
  const BoxSpec box{2, {0, 0}};
  const RegionMask mask{box};
  BoxIndexer idx(box);
  for (int trial = 0; trial < 20; ++trial) {
    auto env = sample_environment(box, WeightDistribution::uniform(1.0, 1.5),
                                  derive_seed(21, 0, trial));
    for (std::size_t ai = 0; ai < idx.vertex_count(); ++ai) {
      const Vertex a = idx.vertex_at(ai);
      ShortestPaths sp(env, a, mask);
      for (std::size_t bi = ai + 1; bi < idx.vertex_count(); ++bi) {
        const Vertex b = idx.vertex_at(bi);
        const PathRecord reference = testing::exhaustive_geodesic(env, a, b, mask);
        CHECK(sp.time_to(b) == reference.total_time);
        CHECK(sp.path_to(b).vertices == reference.vertices);
      }
    }
  }
}

TEST_CASE("search agrees with enumeration on wide-spread weights") {
  const BoxSpec box{2, {0, 0}};
  const RegionMask mask{box};
  for (int trial = 0; trial < 10; ++trial) {
    auto env = sample_environment(box, WeightDistribution::shifted_exponential(0.0, 1.0),
                                  derive_seed(22, 0, trial));
    ShortestPaths sp(env, {-2, -2}, mask);
    for (Vertex b : {Vertex{2, 2}, Vertex{2, -2}, Vertex{0, 0}, Vertex{1, 2}}) {
      const PathRecord reference = testing::exhaustive_geodesic(env, {-2, -2}, b, mask);
      CHECK(sp.time_to(b) == reference.total_time);
      CHECK(sp.path_to(b).vertices == reference.vertices);
    }
  }
}

TEST_CASE("passage time is symmetric bit-for-bit") {
  const BoxSpec box{4, {0, 0}};
  auto env = sample_environment(box, WeightDistribution::uniform(1.0, 1.5), 77);
  std::uint64_t c = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Vertex a = random_vertex(box, 31, c);
    const Vertex b = random_vertex(box, 31, c);
    const auto ab = passage_time(env, a, b, RegionMask{box});
    const auto ba = passage_time(env, b, a, RegionMask{box});
    CHECK(ab.time == ba.time);
  }
}

TEST_CASE("triangle inequality across random triples") {
  const BoxSpec box{5, {0, 0}};
  auto env = sample_environment(box, WeightDistribution::triangular(0.0, 1.0, 4.0), 13);
  std::uint64_t c = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Vertex a = random_vertex(box, 37, c);
    const Vertex b = random_vertex(box, 37, c);
    const Vertex v = random_vertex(box, 37, c);
    const double direct = passage_time(env, a, v, RegionMask{box}).time;
    const double relay = passage_time(env, a, b, RegionMask{box}).time +
                         passage_time(env, b, v, RegionMask{box}).time;
    CHECK(direct <= relay + 1e-9);
  }
}

TEST_CASE("wider masks can only shorten restricted passage times") {
  auto env = sample_environment(BoxSpec{8, {0, 0}},
                                WeightDistribution::shifted_exponential(0.0, 1.0), 5);
  const Vertex a{-3, 0}, b{3, 0};
  const double tight = passage_time(env, a, b, RegionMask{BoxSpec{3, {0, 0}}}).time;
  const double mid = passage_time(env, a, b, RegionMask{BoxSpec{5, {0, 0}}}).time;
  const double loose = passage_time(env, a, b, RegionMask{BoxSpec{8, {0, 0}}}).time;
  CHECK(tight >= mid);
  CHECK(mid >= loose);
}

TEST_CASE("masks and endpoints are validated") {
  auto env = sample_environment(BoxSpec{4, {0, 0}}, WeightDistribution::uniform(1.0, 1.5), 2);
  CHECK_THROWS_AS(passage_time(env, {5, 0}, {0, 0}, RegionMask{env.region()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(passage_time(env, {0, 0}, {1, 0}, RegionMask{BoxSpec{6, {0, 0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(passage_time(env, {0, 0}, {3, 3}, RegionMask{BoxSpec{2, {0, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("querying an unsettled vertex is an error") {
  auto env = sample_environment(BoxSpec{5, {0, 0}}, WeightDistribution::uniform(1.0, 1.5), 3);
  // early stop at the adjacent target leaves the far corner unsettled
  ShortestPaths sp(env, {0, 0}, RegionMask{env.region()}, {{1, 0}});
  CHECK(sp.time_to({1, 0}) > 0.0);
  CHECK_THROWS_AS(sp.time_to({-5, -5}), std::logic_error);
  CHECK_THROWS_AS(sp.path_to({5, 5}), std::logic_error);
}

TEST_CASE("path records canonicalize the fold direction") {
  auto env = sample_environment(BoxSpec{3, {0, 0}}, WeightDistribution::uniform(1.0, 1.5), 9);
  std::vector<Vertex> forward = {{-2, 0}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}};
  std::vector<Vertex> backward(forward.rbegin(), forward.rend());
  const PathRecord f = make_path_record(forward, env);
  const PathRecord b = make_path_record(backward, env);
  CHECK(f.total_time == b.total_time);
  CHECK(std::ssize(f.edges) == 5);
}

TEST_CASE("path records reject broken or self-crossing input") {
  auto env = sample_environment(BoxSpec{3, {0, 0}}, WeightDistribution::uniform(1.0, 1.5), 9);
  CHECK_THROWS_AS(make_path_record({{0, 0}, {2, 0}}, env), std::invalid_argument);
  CHECK_THROWS_AS(make_path_record({{0, 0}, {1, 0}, {0, 0}, {1, 0}}, env),
                  std::invalid_argument);
}

TEST_CASE("first exit prefix stops at the first outside vertex") {
  auto env = sample_environment(BoxSpec{5, {0, 0}}, WeightDistribution::uniform(1.0, 1.5), 8);
  const PathRecord path = make_path_record(
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {4, 1}, {5, 1}}, env);
  const BoxSpec box{2, {0, 0}};
  const PathRecord prefix = first_exit_prefix(path, box, env);
  CHECK(prefix.vertices.back() == Vertex{3, 0});
  CHECK(std::ssize(prefix.edges) == 3);
  const PathRecord direct = make_path_record({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, env);
  CHECK(prefix.total_time == direct.total_time);

  CHECK_THROWS_AS(first_exit_prefix(path, BoxSpec{2, {4, 4}}, env), std::invalid_argument);
  const PathRecord confined = make_path_record({{0, 0}, {1, 0}}, env);
  CHECK_THROWS_AS(first_exit_prefix(confined, BoxSpec{3, {0, 0}}, env),
                  std::invalid_argument);
}

TEST_CASE("good edge counting matches a direct scan") {
  const BoxSpec box{3, {0, 0}};
  auto env = sample_environment(box, WeightDistribution::uniform(1.0, 1.5), 15);
  GoodSet good;
  good.intervals = IntervalUnion::single(1.2, 1.4);
  good.nu = 0.4;
  const auto res = passage_time(env, {-3, -3}, {3, 3}, RegionMask{box});
  int direct = 0;
  for (const auto& e : res.path.edges)
    if (good.contains(env.weight(e))) ++direct;
  CHECK(good_edge_count(res.path, env, good) == direct);
}

TEST_CASE("boundary crossing count equals n when every edge is good") {
  auto dist = WeightDistribution::uniform(1.0, 1.5);
  auto env = sample_environment(BoxSpec{6, {0, 0}}, dist, 44);
  GoodSet everything;
  everything.intervals = IntervalUnion::single(0.0, 2.0);
  everything.nu = 1.0;
  for (int n : {1, 3, 6}) CHECK(min_good_count_to_boundary(env, everything, n) == n);

  GoodSet nothing;  // empty interval union contains no weight
  nothing.nu = 0.0;
  CHECK(min_good_count_to_boundary(env, nothing, 6) == 0);
}

TEST_CASE("boundary crossing count matches the relaxation reference") {
  auto dist = WeightDistribution::uniform(1.0, 1.5);
  for (double mass : {0.5, 0.75}) {
    GoodSet good = good_set_upper_mass(dist, mass);
    for (int trial = 0; trial < 12; ++trial) {
      auto env = sample_environment(BoxSpec{6, {0, 0}}, dist, derive_seed(61, trial, 0));
      for (int n : {2, 4, 6})
        CHECK(min_good_count_to_boundary(env, good, n) ==
              testing::bellman_ford_good_count(env, good, n));
    }
  }
}

TEST_CASE("boundary crossing count is monotone in the radius") {
  auto dist = WeightDistribution::uniform(1.0, 1.5);
  GoodSet good = good_set_upper_mass(dist, 0.75);
  auto env = sample_environment(BoxSpec{10, {0, 0}}, dist, 3);
  int prev = 0;
  for (int n = 1; n <= 10; ++n) {
    const int count = min_good_count_to_boundary(env, good, n);
    CHECK(count >= prev);
    prev = count;
  }
}
