#include "support.hpp"

#include "bredon/diagram_metrics.hpp"
#include "bredon/error.hpp"

#include <doctest.h>

#include <random>

using namespace bredon;
using namespace bredon::test;

TEST_CASE("bottleneck examples") {
  const auto a = diagram({{0, 4}, {1, 3}});
  const auto same = bottleneck_distance(a, a, 0);
  CHECK(same.distance == 0.0);
  CHECK(same.certificate.pairs.size() == 2);
  for (const auto& p : same.certificate.pairs) CHECK(p.a == p.b);

  const auto half = bottleneck_distance(diagram({{0, 2}}), diagram({}), 0);
  CHECK(half.distance == 1.0);
  REQUIRE(half.certificate.pairs.size() == 1);
  CHECK(half.certificate.pairs[0].b == kDiagonal);

  const auto b = diagram({{0.5, 4.5}, {1, 2.5}});
  const double d = bottleneck_distance(a, b, 0).distance;
  CHECK(d == brute_force_bottleneck(a.degree(0), b.degree(0)));
  CHECK(d == 0.5);

  // absent degree is an empty multiset
  CHECK(bottleneck_distance(a, b, 3).distance == 0.0);
}

TEST_CASE("infinite bars match only infinite bars") {
  const auto a = diagram({{0, kInfinity}, {1, kInfinity}, {0, 1}});
  const auto b = diagram({{0.25, kInfinity}, {1.5, kInfinity}});
  const auto r = bottleneck_distance(a, b, 0);
  CHECK_FALSE(r.infinite);
  CHECK(r.distance == 0.5);

  const auto c = diagram({{0, kInfinity}});
  const auto inf = bottleneck_distance(a, c, 0);
  CHECK(inf.infinite);
  CHECK(inf.distance == kInfinity);
}

TEST_CASE("bottleneck agrees with exhaustive matching and is a metric") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> infinite(0, 2);
  for (int t = 0; t < 150; ++t) {
    const int k = infinite(rng);
    const auto a = diagram(random_bars(rng, 5, k));
    const auto b = diagram(random_bars(rng, 5, k));
    const auto c = diagram(random_bars(rng, 5, k));
    const auto ab = bottleneck_distance(a, b, 0);
    CHECK(ab.distance == brute_force_bottleneck(a.degree(0), b.degree(0)));
    CHECK(ab.distance == bottleneck_distance(b, a, 0).distance);
    CHECK(bottleneck_distance(a, a, 0).distance == 0.0);
    CHECK(certificate_cost(a, b, ab.certificate) == ab.distance);
    const double ac = bottleneck_distance(a, c, 0).distance, cb = bottleneck_distance(c, b, 0).distance;
    CHECK(ab.distance <= ac + cb + 1e-9);
  }
}

TEST_CASE("certificate validation") {
  const auto a = diagram({{0, 2}});
  const auto b = diagram({{0, 3}});
  MatchingCertificate bad;
  bad.pairs = {{0, kDiagonal}};
  CHECK_THROWS_AS(certificate_cost(a, b, bad), InputError);
  bad.pairs = {{0, 0}, {0, kDiagonal}};
  CHECK_THROWS_AS(certificate_cost(a, b, bad), InputError);
  bad.pairs = {{0, kDiagonal}, {kDiagonal, 0}};
  CHECK(certificate_cost(a, b, bad) == 1.5);
}

TEST_CASE("interleaving decisions") {
  const auto a = diagram({{0, 2}, {1, 5}, {0, kInfinity}});
  CHECK(check_interleaving(a, a, 0.0, 0).interleaved);

  const auto v = check_interleaving(diagram({{0, 2}}), diagram({}), 0.5, 0);
  CHECK_FALSE(v.interleaved);
  REQUIRE(v.violating_bar);
  CHECK(*v.violating_bar == Bar{0, 2});
  CHECK(v.violating_side == 'a');

  auto shifted = a;
  for (auto& bar : shifted.bars[0]) {
    bar.birth += 0.3;
    if (!bar.is_infinite()) bar.death += 0.3;
  }
  CHECK(check_interleaving(a, shifted, 0.3, 0).interleaved);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto x = diagram(random_bars(rng, 4, 1));
    const auto y = diagram(random_bars(rng, 4, 1));
    const double d = bottleneck_distance(x, y, 0).distance;
    CHECK(check_interleaving(x, y, d, 0).interleaved);
    if (d > 1e-6) {
      const auto no = check_interleaving(x, y, d - 1e-6, 0);
      CHECK_FALSE(no.interleaved);
      CHECK(no.violating_bar.has_value());
    }
  }
  CHECK_THROWS_AS(check_interleaving(a, a, -1.0, 0), InputError);
}

TEST_CASE("perturbation stays in the ball and is keyed by seed, trial and index") {
  const auto cloud = circle(20);
  const auto ids = iota(20);
  const auto p = perturb(cloud, ids, 0.05, 1, 0);
  for (int i = 0; i < 20; ++i) CHECK((p.points.row(i) - cloud.points.row(i)).norm() <= 0.05);
  CHECK(perturb(cloud, ids, 0.05, 1, 0).points == p.points);
  CHECK(perturb(cloud, ids, 0.05, 1, 1).points != p.points);
  const std::vector<int> some = {3};
  const auto q = perturb(cloud, some, 0.05, 1, 0);
  CHECK(q.points.row(3) == p.points.row(3));
  CHECK(q.points.row(4) == cloud.points.row(4));
  CHECK(perturb(cloud, ids, 0.0, 1, 0).points == cloud.points);
}

TEST_CASE("stability predicate") {
  const auto cloud = circle(40);
  const auto ids = iota(40);
  StabilityOptions o;
  o.trials = 5;
  o.rips = {1.0, 2, 1};

  o.perturbation_scale = 0.0;
  const auto zero = stability_predicate(cloud, ids, o);
  CHECK(zero.holds);
  CHECK(zero.worst_distance == 0.0);

  o.perturbation_scale = 0.01;
  const auto ok = stability_predicate(cloud, ids, o);
  CHECK(ok.holds);
  CHECK(ok.trials.size() == 5);
  CHECK(ok.worst_ratio <= 2.0 + 1e-6);

  o.K = 0.001;
  const auto bad = stability_predicate(cloud, ids, o);
  CHECK_FALSE(bad.holds);
  CHECK(bad.witness_trial.has_value());

  o.K = 2.0;
  const std::vector<int> one = {5};
  CHECK(stability_predicate(cloud, one, o).vacuous);

  o.workers = 3;
  const auto parallel = stability_predicate(cloud, ids, o);
  for (std::size_t i = 0; i < ok.trials.size(); ++i) CHECK(parallel.trials[i].distances == ok.trials[i].distances);

  CHECK_THROWS_AS(stability_predicate(cloud, std::vector<int>{}, o), InputError);
  o.trials = 0;
  CHECK_THROWS_AS(stability_predicate(cloud, ids, o), InputError);
}

TEST_CASE("rips stability oracle on small clouds") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto cloud = random_cloud(rng, 12, 2);
    StabilityOptions o;
    o.trials = 3;
    o.perturbation_scale = 0.02;
    o.rips = {10.0, 2, 1};  // no truncation
    o.seed = std::uint64_t(t);
    const auto v = stability_predicate(cloud, iota(12), o);
    CHECK(v.holds);
  }
}
