#pragma once

#include "bredon/complex.hpp"

#include <Eigen/Core>

#include <compare>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bredon {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Bar {
  double birth = 0.0;
  double death = kInfinity;

  bool is_infinite() const { return death == kInfinity; }
  double length() const { return death - birth; }
  auto operator<=>(const Bar&) const = default;
};

/// Per-degree multisets of bars.
struct PersistenceDiagram {
  std::map<int, std::vector<Bar>> bars;
  std::string source;

  /// Empty when the degree is absent.
  const std::vector<Bar>& degree(int k) const;
  int max_degree() const { return bars.empty() ? -1 : bars.rbegin()->first; }
  /// Bars with birth <= t < death.
  int alive_at(int k, double t) const;
  void sort();
};

/// Exact per-degree multiset equality up to a value tolerance.
bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b, double tol = 0.0);
PersistenceDiagram multiset_union(const PersistenceDiagram& a, const PersistenceDiagram& b);

struct PersistenceOptions {
  bool include_zero_length = false;
};

/// Standard left-to-right column reduction over the two-element field.
/// Throws FiltrationOrderError if a face is missing or comes later.
PersistenceDiagram compute_persistence(const Filtration& filtration, int max_degree,
                                       PersistenceOptions options = {});

/// beta_degree of each sublevel complex by direct rank computation.
std::vector<int> betti_curve_oracle(const Filtration& filtration, int degree,
                                    std::span<const double> scales);

struct PersistenceModuleView {
  int degree = 0;
  std::vector<double> scales;
  std::vector<int> betti;
  /// ranks(i, j) = rank of H(s_i) -> H(s_j) for i <= j; -1 below the diagonal.
  Eigen::MatrixXi ranks;

  int consecutive_rank(std::size_t i) const { return ranks(Eigen::Index(i), Eigen::Index(i + 1)); }
};

PersistenceModuleView module_view(const Filtration& filtration, int degree,
                                  std::span<const double> scales);

}  // namespace bredon
