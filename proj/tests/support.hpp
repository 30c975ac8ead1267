#pragma once

// Fixtures and independent oracles shared by the unit and acceptance tests.

#include "bredon/complex.hpp"
#include "bredon/diagram_metrics.hpp"
#include "bredon/persistence.hpp"
#include "bredon/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <vector>

namespace bredon::test {

inline std::filesystem::path source_dir() { return BREDON_SOURCE_DIR; }

inline PointCloud circle(int n, double radius = 1.0) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    rows.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return PointCloud::from_rows(rows);
}

inline PointCloud random_cloud(std::mt19937_64& rng, int n, int dim, double side = 1.0) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& r : rows)
    for (auto& x : r) x = u(rng);
  return PointCloud::from_rows(rows);
}

inline PointCloud line_points(std::vector<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return PointCloud::from_rows(rows);
}

inline std::vector<int> iota(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[std::size_t(i)] = i;
  return v;
}

inline PersistenceDiagram diagram(std::vector<Bar> bars, int degree = 0) {
  PersistenceDiagram d;
  d.bars[degree] = std::move(bars);
  return d;
}

/// Exhaustive bottleneck: every assignment of each a-bar to an unused b-bar or
/// the diagonal, leftover b-bars to the diagonal; infinite bars by every permutation.
inline double brute_force_bottleneck(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  std::vector<Bar> fa, fb;
  std::vector<double> ia, ib;
  for (const auto& x : a) (x.is_infinite() ? (ia.push_back(x.birth), void()) : fa.push_back(x));
  for (const auto& x : b) (x.is_infinite() ? (ib.push_back(x.birth), void()) : fb.push_back(x));
  if (ia.size() != ib.size()) return kInfinity;

  double inf_part = kInfinity;
  std::sort(ib.begin(), ib.end());
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < ia.size(); ++i) worst = std::max(worst, std::abs(ia[i] - ib[i]));
    inf_part = std::min(inf_part, worst);
  } while (std::next_permutation(ib.begin(), ib.end()));

  auto half = [](const Bar& x) { return (x.death - x.birth) / 2.0; };
  auto sup = [](const Bar& x, const Bar& y) {
    return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
  };
  std::vector<bool> used(fb.size(), false);
  double best = kInfinity;
  auto rec = [&](auto&& self, std::size_t i, double worst) -> void {
    if (worst >= best) return;
    if (i == fa.size()) {
      for (std::size_t j = 0; j < fb.size(); ++j)
        if (!used[j]) worst = std::max(worst, half(fb[j]));
      best = std::min(best, worst);
      return;
    }
    self(self, i + 1, std::max(worst, half(fa[i])));
    for (std::size_t j = 0; j < fb.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, std::max(worst, sup(fa[i], fb[j])));
      used[j] = false;
    }
  };
  rec(rec, 0, 0.0);
  return std::max(best, inf_part);
}

inline std::vector<Bar> random_bars(std::mt19937_64& rng, int max_finite, int infinite) {
  std::uniform_int_distribution<int> count(0, max_finite);
  // A coarse value grid makes ties between candidate costs common.
  std::uniform_int_distribution<int> grid(0, 20);
  std::vector<Bar> bars;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    double x = grid(rng) * 0.25, y = grid(rng) * 0.25;
    if (x > y) std::swap(x, y);
    bars.push_back({x, y});
  }
  for (int i = 0; i < infinite; ++i) bars.push_back({grid(rng) * 0.25, kInfinity});
  std::shuffle(bars.begin(), bars.end(), rng);
  return bars;
}

/// Sixteen evenly spaced scales from just below 0 to past the largest value.
inline std::vector<double> scale_grid(const Filtration& f) {
  const double top = f.max_value();
  std::vector<double> s;
  for (int i = 0; i < 16; ++i) s.push_back(-0.01 + (top + 0.02) * i / 15.0);
  return s;
}

}  // namespace bredon::test
