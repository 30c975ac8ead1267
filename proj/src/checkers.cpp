#include "bredon/checkers.hpp"

#include "bredon/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bredon {

namespace {

std::string betti_text(const std::vector<int>& betti) {
  std::ostringstream s;
  s << "betti (";
  for (std::size_t k = 0; k < betti.size(); ++k) s << (k ? "," : "") << betti[k];
  s << ')';
  return s.str();
}

}  // namespace

LocalVerdict TrivialChecker::evaluate(std::span<const int>) const { return {}; }

LocalVerdict ConnectivityChecker::evaluate(std::span<const int> subset) const {
  const auto f = vietoris_rips(cloud_, scale_, 1, subset);
  LocalVerdict v;
  v.betti = betti_numbers(f, scale_, 0);
  v.holds = v.betti[0] == 1;
  v.evidence = betti_text(v.betti);
  return v;
}

std::string ConnectivityChecker::description() const {
  std::ostringstream s;
  s << "connectivity (beta_0 = 1) at scale " << scale_;
  return s.str();
}

LocalVerdict AcyclicityChecker::evaluate(std::span<const int> subset) const {
  const auto f = vietoris_rips(cloud_, scale_, max_degree_ + 1, subset);
  LocalVerdict v;
  v.betti = betti_numbers(f, scale_, max_degree_);
  v.holds = std::all_of(v.betti.begin() + 1, v.betti.end(), [](int b) { return b == 0; });
  v.evidence = betti_text(v.betti);
  return v;
}

std::string AcyclicityChecker::description() const {
  std::ostringstream s;
  s << "acyclicity (beta_k = 0 for 1 <= k <= " << max_degree_ << ") at scale " << scale_;
  return s.str();
}

StabilityChecker::StabilityChecker(const PointCloud& cloud, StabilityOptions options)
    : cloud_(cloud), options_(options) {
  std::vector<int> all(std::size_t(cloud.size()));
  std::iota(all.begin(), all.end(), 0);
  perturbed_ = perturb(cloud, all, options_.perturbation_scale, options_.seed, 0);
}

LocalVerdict StabilityChecker::evaluate(std::span<const int> subset) const {
  auto opts = options_;
  opts.workers = 1;
  const auto p = stability_predicate(cloud_, subset, opts);
  LocalVerdict v;
  v.holds = p.holds;
  v.vacuous = p.vacuous;
  // The certified local constant is the bound the predicate checked.
  v.epsilon = options_.K * options_.perturbation_scale;
  v.ratio = options_.K;
  std::ostringstream s;
  s << "worst d_B " << p.worst_distance << " over " << p.trials.size() << " trials, observed ratio "
    << p.worst_ratio;
  if (p.witness_trial) s << ", violated in trial " << *p.witness_trial;
  v.evidence = s.str();
  return v;
}

std::string StabilityChecker::description() const {
  std::ostringstream s;
  s << "stability (d_B <= " << options_.K << " * " << options_.perturbation_scale << ", "
    << options_.trials << " trials)";
  return s.str();
}

PersistenceDiagram StabilityChecker::local_diagram(std::span<const int> subset) const {
  const auto& r = options_.rips;
  return compute_persistence(vietoris_rips(perturbed_, r.max_scale, r.max_dim, subset), r.max_degree);
}

PersistenceDiagram StabilityChecker::global_diagram(std::span<const int> subset) const {
  const auto& r = options_.rips;
  return compute_persistence(vietoris_rips(cloud_, r.max_scale, r.max_dim, subset), r.max_degree);
}

}  // namespace bredon
