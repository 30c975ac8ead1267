#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace bredon {

/// Finite sample in R^d, one point per row.
struct PointCloud {
  Eigen::MatrixXd points;
  std::vector<std::string> labels;  // empty, or one per point

  PointCloud() = default;
  explicit PointCloud(Eigen::MatrixXd pts, std::vector<std::string> lbls = {});

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
  bool empty() const { return points.rows() == 0; }
  auto point(int i) const { return points.row(i); }

  /// Rows selected by index, in the given order.
  PointCloud select(std::span<const int> indices) const;
};

/// Euclidean distance matrix between the rows of two matrices.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> pairwise_distances(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j) out(i, j) = (a.row(i) - b.row(j)).norm();
  return out;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pairwise_distances(
    const Eigen::MatrixBase<Derived>& a) {
  return pairwise_distances(a, a);
}

/// Exact Hausdorff distance between two finite row sets of equal width.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hausdorff_distance(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  const auto d = pairwise_distances(a, b);
  return std::max(d.rowwise().minCoeff().maxCoeff(), d.colwise().minCoeff().maxCoeff());
}

/// Throws InputError on empty input or dimension mismatch.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

/// Largest pairwise distance among the selected points (0 for fewer than two).
double diameter(const PointCloud& cloud, std::span<const int> indices);

}  // namespace bredon
