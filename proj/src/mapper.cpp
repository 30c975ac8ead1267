#include "bredon/mapper.hpp"

#include "bredon/cover.hpp"
#include "bredon/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bredon {

std::vector<std::vector<int>> single_linkage(const PointCloud& cloud, std::span<const int> members,
                                             double scale) {
  const auto pts = normalized(std::vector<int>(members.begin(), members.end()));
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((cloud.point(pts[i]) - cloud.point(pts[j])).norm() <= scale) {
        auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::map<std::size_t, std::vector<int>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(pts[i]);
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

MapperComplex mapper(const PointCloud& cloud, std::span<const double> filter, int resolution,
                     double gain, double cluster_scale, int max_dim) {
  if (cloud.empty()) throw InputError("mapper: empty point cloud");
  if (!(cluster_scale > 0.0)) throw InputError("mapper: cluster scale must be positive");
  const Cover cover = build_grid_cover(cloud, filter, resolution, gain);
  MapperComplex out;
  for (const auto& e : cover.elements()) {
    auto clusters = single_linkage(cloud, e.members, cluster_scale);
    for (std::size_t c = 0; c < clusters.size(); ++c)
      out.nodes.push_back({e.id, int(c), std::move(clusters[c])});
  }
  std::vector<std::vector<int>> sets;
  for (const auto& node : out.nodes) sets.push_back(node.members);
  out.complex = nerve_of_sets(sets, max_dim);
  return out;
}

}  // namespace bredon
