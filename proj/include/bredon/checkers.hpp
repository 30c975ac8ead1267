#pragma once

#include "bredon/diagram_metrics.hpp"
#include "bredon/point_cloud.hpp"
#include "bredon/protocol.hpp"

#include <functional>
#include <span>
#include <string>

namespace bredon {

/// Always holds with epsilon 0.
class TrivialChecker final : public PropertyChecker {
 public:
  LocalVerdict evaluate(std::span<const int> subset) const override;
  std::string description() const override { return "trivial"; }
};

/// beta_0 = 1 for the Rips complex of the subset at `scale`.
class ConnectivityChecker final : public PropertyChecker {
 public:
  ConnectivityChecker(const PointCloud& cloud, double scale) : cloud_(cloud), scale_(scale) {}
  LocalVerdict evaluate(std::span<const int> subset) const override;
  std::string description() const override;

 private:
  const PointCloud& cloud_;
  double scale_;
};

/// beta_k = 0 for 1 <= k <= max_degree.
class AcyclicityChecker final : public PropertyChecker {
 public:
  AcyclicityChecker(const PointCloud& cloud, double scale, int max_degree = 1)
      : cloud_(cloud), scale_(scale), max_degree_(max_degree) {}
  LocalVerdict evaluate(std::span<const int> subset) const override;
  std::string description() const override;

 private:
  const PointCloud& cloud_;
  double scale_;
  int max_degree_;
};

/// Persistence diagrams stable under perturbations: wraps stability_predicate.
/// The local diagram of a subset is the Rips diagram of its trial-0 perturbed copy.
class StabilityChecker final : public PropertyChecker, public DiagramProperty {
 public:
  StabilityChecker(const PointCloud& cloud, StabilityOptions options);

  LocalVerdict evaluate(std::span<const int> subset) const override;
  std::string description() const override;
  const DiagramProperty* diagram_property() const override { return this; }

  PersistenceDiagram local_diagram(std::span<const int> subset) const override;
  PersistenceDiagram global_diagram(std::span<const int> subset) const override;
  double input_epsilon() const override { return options_.perturbation_scale; }
  int max_degree() const override { return options_.rips.max_degree; }

  const StabilityOptions& options() const { return options_; }

 private:
  const PointCloud& cloud_;
  StabilityOptions options_;
  PointCloud perturbed_;
};

/// Wraps an arbitrary callable, for constructed counterexamples.
class FunctionChecker final : public PropertyChecker {
 public:
  FunctionChecker(std::function<LocalVerdict(std::span<const int>)> fn, std::string description)
      : fn_(std::move(fn)), description_(std::move(description)) {}
  LocalVerdict evaluate(std::span<const int> subset) const override { return fn_(subset); }
  std::string description() const override { return description_; }

 private:
  std::function<LocalVerdict(std::span<const int>)> fn_;
  std::string description_;
};

}  // namespace bredon
