#include "bredon/point_cloud.hpp"

#include "bredon/error.hpp"

#include <sstream>

namespace bredon {

std::string format_simplex(const std::vector<int>& vertices) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << vertices[i];
  os << '}';
  return os.str();
}

PointCloud::PointCloud(Eigen::MatrixXd pts, std::vector<std::string> lbls)
    : points(std::move(pts)), labels(std::move(lbls)) {
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != points.rows())
    throw InputError("label count does not match point count");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return PointCloud{};
  const auto d = rows.front().size();
  if (d == 0) throw InputError("points must have positive dimension");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d)
      throw InputError("point " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " coordinates, expected " + std::to_string(d));
    for (std::size_t j = 0; j < d; ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  }
  return PointCloud(std::move(m));
}

PointCloud PointCloud::select(std::span<const int> indices) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(indices.size()), points.cols());
  std::vector<std::string> lbls;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    m.row(Eigen::Index(i)) = points.row(indices[i]);
    if (!labels.empty()) lbls.push_back(labels[indices[i]]);
  }
  return PointCloud(std::move(m), std::move(lbls));
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw InputError("hausdorff_distance: clouds must be nonempty");
  if (a.dim() != b.dim())
    throw InputError("hausdorff_distance: dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  return hausdorff_distance(a.points, b.points);
}

double diameter(const PointCloud& cloud, std::span<const int> indices) {
  double d = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      d = std::max(d, (cloud.point(indices[i]) - cloud.point(indices[j])).norm());
  return d;
}

}  // namespace bredon
