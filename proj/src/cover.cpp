#include "bredon/cover.hpp"

#include "bredon/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>

namespace bredon {

std::vector<int> set_intersection(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_union(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool intersects(std::span<const int> a, std::span<const int> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return true;
  }
  return false;
}

std::vector<int> normalized(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string provenance_kind(const Provenance& p) {
  static constexpr const char* kNames[] = {"explicit", "ball", "grid-cell", "intersection"};
  return kNames[p.index()];
}

Cover::Cover(std::vector<CoverElement> elements, int ground_set_size, double delta)
    : elements_(std::move(elements)), ground_set_size_(ground_set_size), delta_(delta) {
  if (ground_set_size < 0) throw InputError("ground set size must be nonnegative");
  if (!(delta >= 0.0)) throw InputError("cover delta must be nonnegative");
  std::vector<char> covered(static_cast<std::size_t>(ground_set_size), 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto& e = elements_[i];
    e.id = static_cast<int>(i);
    e.members = normalized(std::move(e.members));
    if (e.members.empty()) throw InputError("cover element " + std::to_string(i) + " is empty");
    if (e.members.front() < 0 || e.members.back() >= ground_set_size)
      throw InputError("cover element " + std::to_string(i) + " has a member outside the ground set");
    for (int m : e.members) covered[std::size_t(m)] = 1;
  }
  for (int p = 0; p < ground_set_size; ++p)
    if (!covered[std::size_t(p)]) throw OrphanPointError(p);
  for (std::size_t a = 0; a < elements_.size(); ++a)
    for (std::size_t b = a + 1; b < elements_.size(); ++b)
      if (intersects(elements_[a].members, elements_[b].members))
        edges_.emplace_back(static_cast<int>(a), static_cast<int>(b));
}

std::optional<int> Cover::find_by_members(const std::vector<int>& members) const {
  for (const auto& e : elements_)
    if (e.members == members) return e.id;
  return std::nullopt;
}

namespace {

std::vector<int> ball_members(const PointCloud& cloud, const Eigen::RowVectorXd& center,
                              double radius) {
  std::vector<int> out;
  for (int i = 0; i < cloud.size(); ++i)
    if ((cloud.point(i) - center).norm() <= radius) out.push_back(i);
  return out;
}

std::vector<int> maxmin_landmarks(const PointCloud& cloud, int k) {
  const int n = cloud.size();
  k = std::min(k, n);
  std::vector<int> picked{0};
  std::vector<double> dist(std::size_t(n), std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) dist[std::size_t(i)] = (cloud.point(i) - cloud.point(0)).norm();
  while (static_cast<int>(picked.size()) < k) {
    int best = 0;
    for (int i = 1; i < n; ++i)
      if (dist[std::size_t(i)] > dist[std::size_t(best)]) best = i;
    picked.push_back(best);
    for (int i = 0; i < n; ++i)
      dist[std::size_t(i)] = std::min(dist[std::size_t(i)], (cloud.point(i) - cloud.point(best)).norm());
  }
  return picked;
}

}  // namespace

Cover build_ball_cover(const PointCloud& cloud, double radius, const LandmarkStrategy& landmarks) {
  if (!(radius > 0.0)) throw InputError("ball cover radius must be positive");
  if (cloud.empty()) throw InputError("ball cover needs at least one point");
  std::vector<CoverElement> elements;

  auto add_center_balls = [&](const std::vector<int>& centers) {
    for (int c : centers) {
      if (c < 0 || c >= cloud.size())
        throw InputError("landmark index " + std::to_string(c) + " out of range");
      elements.push_back({0, ball_members(cloud, cloud.point(c), radius), BallSource{c, radius}});
    }
  };

  if (std::holds_alternative<AllPoints>(landmarks)) {
    std::vector<int> all(std::size_t(cloud.size()));
    for (int i = 0; i < cloud.size(); ++i) all[std::size_t(i)] = i;
    add_center_balls(all);
  } else if (const auto* mm = std::get_if<MaxMin>(&landmarks)) {
    if (mm->k < 1) throw InputError("maxmin landmark count must be positive");
    add_center_balls(maxmin_landmarks(cloud, mm->k));
  } else if (const auto* ex = std::get_if<ExplicitLandmarks>(&landmarks)) {
    if (ex->indices.empty()) throw InputError("explicit landmark list is empty");
    add_center_balls(ex->indices);
  } else {
    const int d = cloud.dim();
    const double side = 2.0 * radius / std::sqrt(double(d));
    const Eigen::RowVectorXd lo = cloud.points.colwise().minCoeff();
    const Eigen::RowVectorXd hi = cloud.points.colwise().maxCoeff();
    std::vector<int> cells(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
      cells[std::size_t(a)] = std::max(1, int(std::ceil((hi(a) - lo(a)) / side)));
    std::vector<int> idx(std::size_t(d), 0);
    while (true) {
      Eigen::RowVectorXd center(d);
      GridCellSource src;
      for (int a = 0; a < d; ++a) {
        const double c0 = lo(a) + side * idx[std::size_t(a)];
        src.ranges.emplace_back(c0, c0 + side);
        center(a) = c0 + side / 2;
      }
      auto members = ball_members(cloud, center, radius);
      if (!members.empty()) elements.push_back({0, std::move(members), std::move(src)});
      int a = 0;
      while (a < d && ++idx[std::size_t(a)] == cells[std::size_t(a)]) idx[std::size_t(a++)] = 0;
      if (a == d) break;
    }
  }
  return Cover(std::move(elements), cloud.size(), radius);
}

Cover build_grid_cover(const PointCloud& cloud, std::span<const double> filter, int resolution,
                       double gain) {
  if (cloud.empty()) throw InputError("grid cover needs at least one point");
  if (static_cast<int>(filter.size()) != cloud.size())
    throw InputError("filter has " + std::to_string(filter.size()) + " values for " +
                     std::to_string(cloud.size()) + " points");
  if (resolution < 1) throw InputError("grid cover resolution must be at least 1");
  if (!(gain > 0.0 && gain < 1.0)) throw InputError("grid cover gain must lie in (0, 1)");
  for (std::size_t i = 0; i < filter.size(); ++i)
    if (!std::isfinite(filter[i])) throw InputError("filter value " + std::to_string(i) + " is not finite");

  const auto [lo_it, hi_it] = std::minmax_element(filter.begin(), filter.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<CoverElement> elements;
  if (resolution == 1 || hi == lo) {
    std::vector<int> all(filter.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
    elements.push_back({0, std::move(all), GridCellSource{{{lo, hi}}}});
    return Cover(std::move(elements), cloud.size(), (hi - lo) / 2.0);
  }
  const double width = (hi - lo) / resolution;
  const double ext = gain * width;
  for (int w = 0; w < resolution; ++w) {
    const double a = lo + w * width - ext;
    const double b = lo + (w + 1) * width + ext;
    std::vector<int> members;
    for (std::size_t i = 0; i < filter.size(); ++i)
      if (filter[i] >= a && filter[i] <= b) members.push_back(int(i));
    if (!members.empty()) elements.push_back({0, std::move(members), GridCellSource{{{a, b}}}});
  }
  return Cover(std::move(elements), cloud.size(), (width + 2 * ext) / 2.0);
}

Cover close_under_intersections(const Cover& cover, int max_depth) {
  if (max_depth < 2) throw InputError("intersection closure depth must be at least 2");
  std::vector<CoverElement> out = cover.elements();
  std::map<std::vector<int>, int> seen;
  for (const auto& e : out) seen.emplace(e.members, e.id);

  std::vector<int> base;
  for (const auto& e : out)
    if (!std::holds_alternative<IntersectionSource>(e.provenance)) base.push_back(e.id);

  std::vector<int> parents;
  std::function<void(std::size_t, const std::vector<int>&)> extend =
      [&](std::size_t next, const std::vector<int>& running) {
        if (static_cast<int>(parents.size()) == max_depth) return;
        for (std::size_t j = next; j < base.size(); ++j) {
          auto inter = set_intersection(running, cover.element(base[j]).members);
          if (inter.empty()) continue;
          parents.push_back(base[j]);
          if (!seen.contains(inter)) {
            seen.emplace(inter, int(out.size()));
            out.push_back({int(out.size()), inter, IntersectionSource{parents}});
          }
          extend(j + 1, inter);
          parents.pop_back();
        }
      };
  for (std::size_t i = 0; i < base.size(); ++i) {
    parents = {base[i]};
    extend(i + 1, cover.element(base[i]).members);
  }
  return Cover(std::move(out), cover.ground_set_size(), cover.delta());
}

IntersectionGraph intersection_graph(const Cover& cover) {
  IntersectionGraph g;
  const auto n = std::size_t(cover.size());
  g.adjacency.resize(n);
  g.edges = cover.edges();
  for (auto [a, b] : g.edges) {
    g.adjacency[std::size_t(a)].push_back(b);
    g.adjacency[std::size_t(b)].push_back(a);
  }
  g.component_of.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (g.component_of[s] >= 0) continue;
    const int c = int(g.components.size());
    std::vector<int> comp;
    std::deque<int> queue{int(s)};
    g.component_of[s] = c;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      comp.push_back(x);
      for (int y : g.adjacency[std::size_t(x)])
        if (g.component_of[std::size_t(y)] < 0) {
          g.component_of[std::size_t(y)] = c;
          queue.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    g.components.push_back(std::move(comp));
  }
  return g;
}

const LayerDecomposition::Layer* LayerDecomposition::layer(int n) const {
  for (const auto& l : layers)
    if (l.index == n) return &l;
  return nullptr;
}

LayerDecomposition layer_decomposition(const PointCloud& cloud, std::span<const double> proper) {
  if (static_cast<int>(proper.size()) != cloud.size())
    throw InputError("proper function has " + std::to_string(proper.size()) + " values for " +
                     std::to_string(cloud.size()) + " points");
  std::map<int, std::vector<int>> layers;
  for (std::size_t i = 0; i < proper.size(); ++i) {
    const double f = proper[i];
    if (!std::isfinite(f) || f < 0.0)
      throw InputError("proper function value at index " + std::to_string(i) +
                       " must be finite and nonnegative");
    const int n = static_cast<int>(std::floor(f));
    layers[n].push_back(int(i));
    if (f == double(n) && n >= 1) layers[n - 1].push_back(int(i));
  }
  LayerDecomposition out;
  out.ground_set_size = cloud.size();
  for (auto& [n, members] : layers) {
    members = normalized(std::move(members));
    auto& target = (n % 2 == 0) ? out.even_union : out.odd_union;
    target = set_union(target, members);
    out.layers.push_back({n, std::move(members)});
  }
  return out;
}

bool is_delta_good(const Cover& cover, const PointCloud& cloud) {
  for (const auto& e : cover.elements())
    if (diameter(cloud, e.members) > 2.0 * cover.delta() + 1e-12) return false;
  return true;
}

}  // namespace bredon
