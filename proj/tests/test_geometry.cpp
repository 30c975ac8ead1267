#include "support.hpp"

#include "bredon/cover.hpp"
#include "bredon/error.hpp"
#include "bredon/gf2.hpp"
#include "bredon/point_cloud.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace bredon;
using namespace bredon::test;

namespace {

// Brute-force check of the cover property and the edge invariant.
void check_cover(const Cover& cover) {
  std::set<int> seen;
  for (const auto& e : cover.elements()) {
    CHECK(std::is_sorted(e.members.begin(), e.members.end()));
    CHECK(std::adjacent_find(e.members.begin(), e.members.end()) == e.members.end());
    seen.insert(e.members.begin(), e.members.end());
  }
  CHECK(int(seen.size()) == cover.ground_set_size());
  std::set<std::pair<int, int>> expected;
  for (int a = 0; a < cover.size(); ++a)
    for (int b = a + 1; b < cover.size(); ++b)
      if (!set_intersection(cover.element(a).members, cover.element(b).members).empty())
        expected.insert({a, b});
  std::set<std::pair<int, int>> got(cover.edges().begin(), cover.edges().end());
  CHECK(got == expected);
}

}  // namespace

TEST_CASE("gf2 rank and kernel") {
  gf2::BitVector a(3), b(3), c(3);
  a.set(0);
  a.set(1);
  b.set(1);
  b.set(2);
  c = a;
  c ^= b;  // c = a + b
  CHECK(gf2::rank({a, b, c}) == 2);
  const auto k = gf2::kernel_basis({a, b, c});
  REQUIRE(k.size() == 1);
  CHECK(k[0].count() == 3);
  CHECK(gf2::rank({}) == 0);
  gf2::BitVector wide(130);
  wide.set(129);
  CHECK(wide.highest() == 129);
  CHECK(wide.concat(a).size() == 133);
}

TEST_CASE("point cloud construction and hausdorff distance") {
  CHECK_THROWS_AS(PointCloud::from_rows({{0.0, 1.0}, {1.0}}), InputError);
  const auto a = line_points({0.0});
  const auto b = line_points({3.0});
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, b) == 3.0);
  CHECK(hausdorff_distance(line_points({0.0, 10.0}), line_points({1.0})) == 9.0);
  CHECK_THROWS_AS(hausdorff_distance(a, circle(3)), InputError);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_cloud(rng, 5, 2), y = random_cloud(rng, 4, 2), z = random_cloud(rng, 6, 2);
    const double xy = hausdorff_distance(x, y), yz = hausdorff_distance(y, z), xz = hausdorff_distance(x, z);
    CHECK(xy == hausdorff_distance(y, x));
    CHECK(xz <= xy + yz + 1e-12);
  }
}

TEST_CASE("ball cover on collinear points follows the edge invariant") {
  const auto cloud = line_points({0.0, 1.0, 2.0});
  const auto cover = build_ball_cover(cloud, 1.1);
  REQUIRE(cover.size() == 3);
  CHECK(cover.element(0).members == std::vector<int>{0, 1});
  CHECK(cover.element(1).members == std::vector<int>{0, 1, 2});
  CHECK(cover.element(2).members == std::vector<int>{1, 2});
  // The middle ball reaches both ends, so elements 0 and 2 share point 1.
  CHECK(cover.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(cover.delta() == 1.1);
  check_cover(cover);
}

TEST_CASE("ball cover basics") {
  const auto single = build_ball_cover(line_points({0.0}), 1.0);
  CHECK(single.size() == 1);
  CHECK(single.edges().empty());

  const auto c10 = build_ball_cover(circle(10), 0.8);
  check_cover(c10);
  CHECK(intersection_graph(c10).components.size() == 1);

  // chord between neighbours is 2 sin(18 deg) ~ 0.618 < 0.8
  const auto mm = build_ball_cover(circle(10), 0.8, MaxMin{4});
  check_cover(mm);
  CHECK(mm.element(0).members.front() == 0);

  const auto grid = build_ball_cover(circle(10), 0.8, GridLandmarks{});
  check_cover(grid);
  CHECK(is_delta_good(grid, circle(10)));

  try {
    build_ball_cover(line_points({0.0, 5.0}), 1.0, ExplicitLandmarks{{0}});
    FAIL("expected an orphan point");
  } catch (const OrphanPointError& e) {
    CHECK(e.index() == 1);
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("grid cover windows") {
  const std::vector<double> heights = {0.0, 1.0 / 7, 2.0 / 7, 3.0 / 7, 4.0 / 7, 5.0 / 7, 6.0 / 7, 1.0};
  const auto cloud = line_points(heights);
  const auto cover = build_grid_cover(cloud, heights, 2, 0.25);
  REQUIRE(cover.size() == 2);
  const auto overlap = set_intersection(cover.element(0).members, cover.element(1).members);
  std::vector<int> expected;
  for (int i = 0; i < 8; ++i)
    if (heights[std::size_t(i)] >= 0.375 && heights[std::size_t(i)] <= 0.625) expected.push_back(i);
  CHECK(overlap == expected);
  check_cover(cover);

  CHECK(build_grid_cover(cloud, heights, 1, 0.25).size() == 1);

  const std::vector<double> f = {0.0, 1.0, 2.0, 4.0};
  const auto g = build_grid_cover(line_points(f), f, 4, 0.1);
  REQUIRE(g.size() == 4);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  const std::vector<double> even = {0.0, 1.0, 2.0, 3.0};
  for (const auto& [a, b] : build_grid_cover(line_points(even), even, 4, 0.1).edges()) CHECK(b == a + 1);

  const std::vector<double> flat = {2.0, 2.0, 2.0};
  const auto constant = build_grid_cover(line_points(flat), flat, 3, 0.5);
  CHECK(constant.size() == 1);
  CHECK(constant.element(0).members.size() == 3);

  CHECK_THROWS_AS(build_grid_cover(cloud, heights, 2, 1.0), InputError);
  CHECK_THROWS_AS(build_grid_cover(cloud, std::vector<double>{1.0}, 2, 0.5), InputError);
}

TEST_CASE("closing under intersections") {
  auto make = [](std::vector<std::vector<int>> sets, int n) {
    std::vector<CoverElement> els;
    for (auto& s : sets) els.push_back({0, std::move(s), ExplicitSource{}});
    return Cover(std::move(els), n, 0.0);
  };
  const auto disjoint = make({{0}, {1}}, 2);
  CHECK(close_under_intersections(disjoint, 2).size() == 2);

  const auto tri = make({{0, 1}, {1, 2}, {0, 2}}, 3);
  const auto closed = close_under_intersections(tri, 3);
  REQUIRE(closed.size() == 6);
  std::set<std::vector<int>> added;
  for (int i = 3; i < 6; ++i) {
    added.insert(closed.element(i).members);
    const auto* src = std::get_if<IntersectionSource>(&closed.element(i).provenance);
    REQUIRE(src);
    std::vector<int> meet = closed.element(src->parents[0]).members;
    for (int p : src->parents) meet = set_intersection(meet, closed.element(p).members);
    CHECK(meet == closed.element(i).members);
  }
  CHECK(added == std::set<std::vector<int>>{{0}, {1}, {2}});

  const auto nested = make({{0}, {0, 1}}, 2);
  CHECK(close_under_intersections(nested, 2).size() == 2);

  // Idempotence on random covers.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto cloud = random_cloud(rng, 15, 2);
    const auto c = close_under_intersections(build_ball_cover(cloud, 0.4, MaxMin{5}), 3);
    const auto again = close_under_intersections(c, 3);
    REQUIRE(again.size() == c.size());
    for (int i = 0; i < c.size(); ++i) CHECK(again.element(i).members == c.element(i).members);
    check_cover(c);
  }
  CHECK_THROWS_AS(close_under_intersections(tri, 1), InputError);
}

TEST_CASE("intersection graph") {
  auto make = [](std::vector<std::vector<int>> sets, int n) {
    std::vector<CoverElement> els;
    for (auto& s : sets) els.push_back({0, std::move(s), ExplicitSource{}});
    return Cover(std::move(els), n, 0.0);
  };
  const auto g1 = intersection_graph(make({{0}, {1}}, 2));
  CHECK(g1.components.size() == 2);
  CHECK(g1.edges.empty());

  const auto chain = intersection_graph(make({{0, 1}, {1, 2}, {2, 3}}, 4));
  CHECK(chain.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(chain.components.size() == 1);

  const auto closed = close_under_intersections(make({{0, 1}, {1, 2}}, 3), 2);
  const auto triangle = intersection_graph(closed);
  CHECK(triangle.edges.size() == 3);
}

TEST_CASE("layer decomposition") {
  const auto cloud = line_points({0.5, 1.5, 2.5});
  const std::vector<double> f = {0.5, 1.5, 2.5};
  const auto d = layer_decomposition(cloud, f);
  REQUIRE(d.layers.size() == 3);
  CHECK(d.layer(0)->members == std::vector<int>{0});
  CHECK(d.layer(1)->members == std::vector<int>{1});
  CHECK(d.layer(2)->members == std::vector<int>{2});
  CHECK(d.even_union == std::vector<int>{0, 2});
  CHECK(d.odd_union == std::vector<int>{1});

  const auto flat = layer_decomposition(cloud, std::vector<double>{0.0, 0.0, 0.0});
  CHECK(flat.layers.size() == 1);
  CHECK(flat.odd_union.empty());

  const auto edge = layer_decomposition(line_points({1.0}), std::vector<double>{1.0});
  CHECK(edge.layer(0)->members == std::vector<int>{0});
  CHECK(edge.layer(1)->members == std::vector<int>{0});

  CHECK_THROWS_WITH_AS(layer_decomposition(cloud, std::vector<double>{0.0, -1.0, 0.0}),
                       doctest::Contains("1"), InputError);
  CHECK_THROWS_AS(layer_decomposition(cloud, std::vector<double>{0.0, std::nan(""), 0.0}), InputError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  std::vector<double> g(40);
  for (auto& x : g) x = std::round(u(rng) * 4) / 4;  // many integral values
  const auto r = layer_decomposition(random_cloud(rng, 40, 1), g);
  for (const auto& a : r.layers)
    for (const auto& b : r.layers)
      if (a.index != b.index && a.index % 2 == b.index % 2)
        CHECK(set_intersection(a.members, b.members).empty());
  CHECK(set_union(r.even_union, r.odd_union) == iota(40));
}
