#pragma once

#include "bredon/complex.hpp"
#include "bredon/point_cloud.hpp"

#include <span>
#include <vector>

namespace bredon {

/// Connected components of the graph joining points at distance <= scale.
/// Clusters are sorted and ordered by their smallest member.
std::vector<std::vector<int>> single_linkage(const PointCloud& cloud, std::span<const int> members,
                                             double scale);

struct MapperNode {
  int element = 0;
  int cluster = 0;
  std::vector<int> members;
};

struct MapperComplex {
  std::vector<MapperNode> nodes;
  Filtration complex;  // nerve of the node family, vertices = node indices
};

MapperComplex mapper(const PointCloud& cloud, std::span<const double> filter, int resolution,
                     double gain, double cluster_scale, int max_dim = 2);

}  // namespace bredon
