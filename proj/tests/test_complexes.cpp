#include "support.hpp"

#include "bredon/complex.hpp"
#include "bredon/cover.hpp"
#include "bredon/error.hpp"
#include "bredon/io.hpp"
#include "bredon/mapper.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace bredon;
using namespace bredon::test;

namespace {

Filtration graph(int n, std::vector<std::pair<int, int>> edges) {
  std::vector<Simplex> s;
  for (int i = 0; i < n; ++i) s.push_back({{i}, 0.0});
  for (auto [a, b] : edges) s.push_back({{a, b}, 0.0});
  return Filtration::from_simplices(s);
}

Filtration cycle4() { return graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

// ∂∘∂ = 0 and Euler-Poincaré on any complex.
void check_chain_identities(const Filtration& f) {
  const ChainComplex chain(f.simplices());
  for (int k = 2; k <= chain.top_dim(); ++k) {
    const auto outer = chain.boundary(k - 1);
    for (std::size_t c = 0; c < chain.count(k); ++c) {
      const auto col = chain.boundary_of(k, c);
      gf2::BitVector image(chain.count(k - 2));
      for (std::size_t r = 0; r < col.size(); ++r)
        if (col.test(r)) image ^= outer[r];
      CHECK_FALSE(image.any());
    }
  }
  const auto betti = betti_numbers(f, kInfinity, std::max(chain.top_dim(), 0));
  long alt = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) alt += (k % 2 ? -1 : 1) * betti[k];
  CHECK(alt == euler_characteristic(f, kInfinity));
}

}  // namespace

TEST_CASE("vietoris-rips construction") {
  const auto two = line_points({0.0, 1.0});
  const auto f = vietoris_rips(two, 2.0, 1);
  REQUIRE(f.size() == 3);
  CHECK(f.simplices()[2].vertices == std::vector<int>{0, 1});
  CHECK(f.simplices()[2].value == 1.0);

  const auto tri = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  CHECK(vietoris_rips(tri, 0.5, 2).size() == 3);

  const auto square = circle(4);
  const auto sq = vietoris_rips(square, 1.5, 2);
  CHECK(sq.size() == 8);
  for (const auto& s : sq.simplices())
    if (s.dim() == 1) CHECK(s.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sq.max_dim() == 1);

  // max_dim beyond the vertex count is clamped
  CHECK(vietoris_rips(two, 2.0, 5).max_dim() == 1);
  // subset keeps original ids
  const std::vector<int> sub = {1, 3};
  const auto r = vietoris_rips(circle(4), 3.0, 2, std::span<const int>(sub));
  CHECK(r.vertices() == sub);
}

TEST_CASE("filtration validation") {
  CHECK_THROWS_AS(Filtration::from_simplices({{{0, 1}, 1.0}}), FiltrationOrderError);
  CHECK_THROWS_AS(Filtration::from_simplices({{{0}, 2.0}, {{1}, 0.0}, {{0, 1}, 1.0}}), FiltrationOrderError);
  CHECK_THROWS_AS(Filtration::from_ordered({{{0}, 0.0}, {{0, 1}, 1.0}, {{1}, 0.0}}), InputError);
  CHECK_THROWS_AS(Filtration::from_simplices({{{1, 0}, 0.0}}), InputError);
}

TEST_CASE("nerve") {
  auto make = [](std::vector<std::vector<int>> sets, int n) {
    std::vector<CoverElement> els;
    for (auto& s : sets) els.push_back({0, std::move(s), ExplicitSource{}});
    return Cover(std::move(els), n, 0.0);
  };
  CHECK(nerve(make({{0, 1}, {1, 2}}, 3), 2).size() == 3);
  const auto hollow = nerve(make({{0, 1}, {1, 2}, {0, 2}}, 3), 2);
  CHECK(hollow.size() == 6);
  CHECK(hollow.max_dim() == 1);
  CHECK(betti_numbers(hollow, 0.0, 1) == std::vector<int>{1, 1});
  CHECK(nerve(make({{0}, {1}, {2}, {3}}, 4), 2).size() == 4);
}

TEST_CASE("nerve matches the space for a good circle cover") {
  const auto cloud = circle(30);
  const auto cover = build_ball_cover(cloud, 0.6, MaxMin{8});
  const auto n = nerve(cover, 2);
  const auto rips = vietoris_rips(cloud, 0.3, 2);
  for (const auto& e : cover.elements()) {
    const auto b = betti_numbers(vietoris_rips(cloud, 0.3, 2, std::span<const int>(e.members)), 0.3, 1);
    REQUIRE(b == std::vector<int>{1, 0});
  }
  CHECK(betti_numbers(n, 0.0, 1) == betti_numbers(rips, 0.3, 1));
}

TEST_CASE("betti numbers and euler characteristic") {
  CHECK(betti_numbers(cycle4(), 0.0, 1) == std::vector<int>{1, 1});
  CHECK(betti_numbers(graph(4, {{0, 1}, {2, 3}}), 0.0, 1) == std::vector<int>{2, 0});
  CHECK_THROWS_AS(betti_numbers(cycle4(), 0.0, -1), InputError);

  CHECK(euler_characteristic(graph(1, {}), 0.0) == 1);
  CHECK(euler_characteristic(cycle4(), 0.0) == 0);

  // Octahedron boundary: vertices ±e_i, a triangle per sign choice.
  std::vector<Simplex> oct;
  for (int i = 0; i < 6; ++i) oct.push_back({{i}, 0.0});
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (b != a + 3 || a >= 3) oct.push_back({{a, b}, 0.0});
  for (int x : {0, 3})
    for (int y : {1, 4})
      for (int z : {2, 5}) {
        std::vector<int> t = {x, y, z};
        std::sort(t.begin(), t.end());
        oct.push_back({t, 0.0});
      }
  const auto o = Filtration::from_simplices(oct);
  CHECK(euler_characteristic(o, 0.0) == 2);
  CHECK(betti_numbers(o, 0.0, 2) == std::vector<int>{1, 0, 1});
  check_chain_identities(o);
}

TEST_CASE("cone over the torus is acyclic; the torus is not") {
  const auto torus = filtration_from_json(read_json(source_dir() / "tests/data/torus7.json"));
  const auto cone = filtration_from_json(read_json(source_dir() / "tests/data/cone_torus.json"));
  CHECK(betti_numbers(torus, 0.0, 2) == std::vector<int>{1, 2, 1});
  CHECK(betti_numbers(cone, 0.0, 3) == std::vector<int>{1, 0, 0, 0});
  check_chain_identities(torus);
  check_chain_identities(cone);
}

TEST_CASE("restrict and disjoint union") {
  const auto c = cycle4();
  CHECK(restrict_to(c, iota(4)).simplices() == c.simplices());
  const std::vector<int> pair = {0, 1};
  CHECK(restrict_to(c, pair).size() == 3);
  const auto empty = restrict_to(c, std::vector<int>{});
  CHECK(empty.empty());
  CHECK(betti_numbers(empty, 0.0, 1) == std::vector<int>{0, 0});

  CHECK(disjoint_union(c, Filtration{}).size() == c.size());
  const auto edges = disjoint_union(graph(2, {{0, 1}}), graph(2, {{0, 1}}));
  CHECK(betti_numbers(edges, 0.0, 0) == std::vector<int>{2});
  CHECK(betti_numbers(disjoint_union(c, c), 0.0, 1) == std::vector<int>{2, 2});
}

TEST_CASE("random complexes: chain identities, restriction, partition") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    const auto cloud = random_cloud(rng, 10, 2);
    const auto f = vietoris_rips(cloud, 0.45, 3);
    if (f.size() > 300) continue;
    check_chain_identities(f);
    // face closure with values
    for (const auto& s : f.simplices())
      if (s.dim() > 0)
        for (std::size_t j = 0; j < s.vertices.size(); ++j) {
          auto face = s.vertices;
          face.erase(face.begin() + long(j));
          const auto it = std::find_if(f.simplices().begin(), f.simplices().end(),
                                       [&](const Simplex& x) { return x.vertices == face; });
          REQUIRE(it != f.simplices().end());
          CHECK(it->value <= s.value);
        }
  }

  // Two clusters far apart: restricting to each and re-joining keeps the Betti numbers.
  for (int t = 0; t < 10; ++t) {
    auto a = random_cloud(rng, 6, 2);
    auto b = random_cloud(rng, 6, 2);
    b.points.array() += 10.0;
    PointCloud joined;
    joined.points.resize(12, 2);
    joined.points << a.points, b.points;
    const auto f = vietoris_rips(joined, 0.6, 2);
    const std::vector<int> left = {0, 1, 2, 3, 4, 5}, right = {6, 7, 8, 9, 10, 11};
    const auto rebuilt = disjoint_union(restrict_to(f, left), restrict_to(f, right));
    CHECK(betti_numbers(rebuilt, 0.6, 1) == betti_numbers(f, 0.6, 1));
  }
}

TEST_CASE("mapper") {
  const auto cloud = circle(12);
  std::vector<double> x(12);
  for (int i = 0; i < 12; ++i) x[std::size_t(i)] = cloud.points(i, 0);
  const auto m = mapper(cloud, x, 3, 0.4, 0.6);
  REQUIRE(m.nodes.size() == 4);
  CHECK(betti_numbers(m.complex, 0.0, 1) == std::vector<int>{1, 1});
  std::set<std::vector<int>> nodes;
  for (const auto& n : m.nodes) nodes.insert(n.members);
  CHECK(nodes == std::set<std::vector<int>>{{4, 5, 6, 7, 8}, {2, 3, 4}, {8, 9, 10}, {0, 1, 2, 10, 11}});

  // clusters of one element partition it
  const auto cover = build_grid_cover(cloud, x, 3, 0.4);
  for (const auto& e : cover.elements()) {
    std::vector<int> joined;
    for (const auto& n : m.nodes)
      if (n.element == e.id) joined = set_union(joined, n.members);
    CHECK(joined == e.members);
  }

  const auto singletons = mapper(cloud, x, 1, 0.5, 0.01);
  CHECK(singletons.nodes.size() == 12);

  const auto blobs = PointCloud::from_rows({{0, 0}, {0.1, 0}, {5, 5}, {5.1, 5}});
  const std::vector<double> flat(4, 1.0);
  const auto two = mapper(blobs, flat, 1, 0.5, 0.5);
  CHECK(two.nodes.size() == 2);
  CHECK(two.complex.size() == 2);

  CHECK_THROWS_AS(mapper(PointCloud{}, std::vector<double>{}, 1, 0.5, 0.5), InputError);
  CHECK_THROWS_AS(mapper(cloud, x, 3, 0.5, 0.0), InputError);
}
