#pragma once

#include "bredon/cover.hpp"
#include "bredon/gf2.hpp"
#include "bredon/point_cloud.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace bredon {

struct Simplex {
  std::vector<int> vertices;  // strictly ascending
  double value = 0.0;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  bool operator==(const Simplex&) const = default;
};

/// Filtration order: value, then dimension, then lexicographic vertices.
bool filtration_less(const Simplex& a, const Simplex& b);

/// Face-closed simplicial complex with a monotone value per simplex, stored
/// in a valid filtration order (every simplex after its faces).
class Filtration {
 public:
  Filtration() = default;

  /// Sorts into the canonical filtration order and validates face closure.
  /// vertex_count < 0 means one past the largest vertex used.
  static Filtration from_simplices(std::vector<Simplex> simplices, int vertex_count = -1);

  /// Keeps the caller's order, which must be value-monotone and put faces first.
  static Filtration from_ordered(std::vector<Simplex> simplices, int vertex_count = -1);

  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  int max_dim() const { return max_dim_; }
  int vertex_count() const { return vertex_count_; }

  /// Vertex ids carrying a 0-simplex, ascending.
  std::vector<int> vertices() const;
  /// Number of leading simplices with value <= scale.
  std::size_t prefix_size(double scale) const;
  /// Largest value, or 0 for the empty filtration.
  double max_value() const;

 private:
  static Filtration validated(std::vector<Simplex> simplices, int vertex_count);

  std::vector<Simplex> simplices_;
  int max_dim_ = -1;
  int vertex_count_ = 0;
};

/// Clique complex of the distance graph; value = largest pairwise distance.
/// max_dim is clamped to the available vertex count.
Filtration vietoris_rips(const PointCloud& cloud, double max_scale, int max_dim,
                         std::optional<std::span<const int>> subset = std::nullopt);

/// Simplices over set indices whose sets share a point; all values 0.
Filtration nerve_of_sets(const std::vector<std::vector<int>>& sets, int max_dim);
Filtration nerve(const Cover& cover, int max_dim);

/// Full subcomplex on the given vertex ids; values and vertex ids preserved.
Filtration restrict_to(const Filtration& filtration, std::span<const int> subset);

/// b's vertex ids are shifted past a's vertex_count.
Filtration disjoint_union(const Filtration& a, const Filtration& b);

/// Mod-2 Betti numbers of the sublevel complex, degrees 0..max_degree.
std::vector<int> betti_numbers(const Filtration& complex, double at_scale, int max_degree);

long euler_characteristic(const Filtration& complex, double at_scale);

/// Chain groups of a finite simplicial complex over the two-element field.
class ChainComplex {
 public:
  explicit ChainComplex(std::span<const Simplex> simplices);

  int top_dim() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t count(int k) const;
  const std::vector<std::vector<int>>& cells(int k) const;
  std::optional<std::size_t> index_of(const std::vector<int>& vertices) const;

  /// Columns are k-cells, rows are (k-1)-cells. Empty for k <= 0.
  std::vector<gf2::BitVector> boundary(int k) const;
  gf2::BitVector boundary_of(int k, std::size_t cell) const;

  /// rank of the k-th boundary map (0 outside the stored range).
  std::size_t boundary_rank(int k) const;

  /// beta_k = n_k - rank d_k - rank d_{k+1}.
  int betti(int k) const;

 private:
  std::vector<std::vector<std::vector<int>>> cells_;
  std::map<std::vector<int>, std::size_t> index_;
};

}  // namespace bredon
