#pragma once

#include "bredon/persistence.hpp"
#include "bredon/point_cloud.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bredon {

inline constexpr double kMatchTolerance = 1e-9;
inline constexpr int kDiagonal = -1;

/// Indices refer to degree(k) of each diagram; kDiagonal marks a diagonal match.
struct MatchedPair {
  int a = kDiagonal;
  int b = kDiagonal;
  bool operator==(const MatchedPair&) const = default;
};

struct MatchingCertificate {
  int degree = 0;
  std::vector<MatchedPair> pairs;
  double cost = 0.0;
};

struct BottleneckResult {
  double distance = 0.0;
  bool infinite = false;  // unequal numbers of infinite bars
  MatchingCertificate certificate;
};

/// Sup-norm cost of matching two bars; infinite bars only match infinite bars.
double match_cost(const Bar& a, const Bar& b);
/// Half the bar length.
double diagonal_cost(const Bar& bar);

BottleneckResult bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                     int degree);
/// Largest bottleneck distance over degrees 0..max_degree.
double bottleneck_max(const PersistenceDiagram& a, const PersistenceDiagram& b, int max_degree);

/// Recomputes a certificate's cost; throws InputError if it is not a full matching.
double certificate_cost(const PersistenceDiagram& a, const PersistenceDiagram& b,
                        const MatchingCertificate& certificate);

struct InterleavingResult {
  bool interleaved = false;
  double distance = 0.0;
  MatchingCertificate certificate;
  std::optional<Bar> violating_bar;  // a bar with no partner within epsilon
  char violating_side = 0;           // 'a' or 'b'
};

/// Bottleneck decision rule: interleaved iff d_B <= epsilon + tolerance.
InterleavingResult check_interleaving(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                      double epsilon, int degree,
                                      double tolerance = kMatchTolerance);

struct RipsParams {
  double max_scale = 1.0;
  int max_dim = 2;
  int max_degree = 1;
};

struct StabilityOptions {
  double perturbation_scale = 0.01;
  int trials = 10;
  double K = 2.0;
  RipsParams rips;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct StabilityTrial {
  int trial = 0;
  double epsilon = 0.0;
  std::vector<double> distances;  // per degree
  double ratio = 0.0;
  bool holds = true;
};

struct PredicateVerdict {
  bool holds = true;
  bool vacuous = false;  // single-point subset: degrees >= 1 trivially stable
  double worst_distance = 0.0;
  double worst_ratio = 0.0;
  std::optional<int> witness_trial;
  std::vector<StabilityTrial> trials;
};

/// Moves each subset point by a uniform sample of the Euclidean ball of
/// radius `scale`. The displacement of point i depends only on (seed, trial, i).
PointCloud perturb(const PointCloud& cloud, std::span<const int> subset, double scale,
                   std::uint64_t seed, int trial);

/// Empirical stability check: d_B(Dgm(U), Dgm(U')) <= K * scale per degree and trial.
PredicateVerdict stability_predicate(const PointCloud& cloud, std::span<const int> subset,
                                     const StabilityOptions& options);

}  // namespace bredon
