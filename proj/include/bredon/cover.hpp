#pragma once

#include "bredon/point_cloud.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bredon {

struct ExplicitSource {};
struct BallSource {
  int center = -1;  // -1 when the center is not a sample point
  double radius = 0.0;
};
struct GridCellSource {
  std::vector<std::pair<double, double>> ranges;  // one closed range per axis
};
struct IntersectionSource {
  std::vector<int> parents;
};
using Provenance = std::variant<ExplicitSource, BallSource, GridCellSource, IntersectionSource>;

std::string provenance_kind(const Provenance& p);

struct CoverElement {
  int id = 0;
  std::vector<int> members;  // sorted, duplicate-free
  Provenance provenance;
};

/// Indexed family of point subsets whose union is the whole ground set.
/// Element ids equal their positions; intersection edges are computed
/// exhaustively on construction.
class Cover {
 public:
  Cover() = default;
  /// Normalizes members, renumbers ids by position and checks the cover property.
  /// Throws OrphanPointError for the first unreached point.
  Cover(std::vector<CoverElement> elements, int ground_set_size, double delta);

  const std::vector<CoverElement>& elements() const { return elements_; }
  const CoverElement& element(int id) const { return elements_.at(id); }
  int size() const { return static_cast<int>(elements_.size()); }
  int ground_set_size() const { return ground_set_size_; }
  double delta() const { return delta_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::optional<int> find_by_members(const std::vector<int>& members) const;

 private:
  std::vector<CoverElement> elements_;
  int ground_set_size_ = 0;
  double delta_ = 0.0;
  std::vector<std::pair<int, int>> edges_;
};

struct AllPoints {};
/// Farthest-point sampling seeded at index 0.
struct MaxMin {
  int k = 1;
};
/// Centers on an axis-aligned grid of cell side 2r/sqrt(d) over the bounding box.
struct GridLandmarks {};
struct ExplicitLandmarks {
  std::vector<int> indices;
};
using LandmarkStrategy = std::variant<AllPoints, MaxMin, GridLandmarks, ExplicitLandmarks>;

Cover build_ball_cover(const PointCloud& cloud, double radius,
                       const LandmarkStrategy& landmarks = AllPoints{});

/// Overlapping-interval cover of a filter: `resolution` windows of width L
/// partition [min f, max f], each enlarged by gain*L on both sides.
Cover build_grid_cover(const PointCloud& cloud, std::span<const double> filter, int resolution,
                       double gain);

/// Adds every nonempty intersection of 2..max_depth base elements (those
/// without intersection provenance), deduplicated by member set.
Cover close_under_intersections(const Cover& cover, int max_depth);

struct IntersectionGraph {
  std::vector<std::vector<int>> adjacency;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> components;  // sorted ids, ordered by smallest id
  std::vector<int> component_of;
};

IntersectionGraph intersection_graph(const Cover& cover);

/// Layers A_n = f^-1[n, n+1] of a proper function, closed on both ends.
struct LayerDecomposition {
  struct Layer {
    int index = 0;
    std::vector<int> members;
  };
  std::vector<Layer> layers;  // nonempty layers, ascending index
  std::vector<int> even_union;
  std::vector<int> odd_union;
  int ground_set_size = 0;

  const Layer* layer(int n) const;
};

LayerDecomposition layer_decomposition(const PointCloud& cloud, std::span<const double> proper);

/// Every element has diameter at most 2*delta (points are covered by construction).
bool is_delta_good(const Cover& cover, const PointCloud& cloud);

// Sorted-set helpers shared across modules.
std::vector<int> set_intersection(std::span<const int> a, std::span<const int> b);
std::vector<int> set_union(std::span<const int> a, std::span<const int> b);
bool intersects(std::span<const int> a, std::span<const int> b);
std::vector<int> normalized(std::vector<int> s);

}  // namespace bredon
