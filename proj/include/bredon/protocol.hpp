#pragma once

#include "bredon/cover.hpp"
#include "bredon/mayer_vietoris.hpp"
#include "bredon/persistence.hpp"
#include "bredon/point_cloud.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bredon {

struct LocalVerdict {
  bool holds = true;
  double epsilon = 0.0;  // stability constant when applicable
  double ratio = 0.0;    // epsilon / input perturbation scale
  bool vacuous = false;
  std::string evidence;
  std::vector<int> betti;
  double cost_seconds = 0.0;  // not part of deterministic exports
};

class DiagramProperty;

/// A property P(U) of point subsets. evaluate() must be deterministic and
/// must not mutate shared state.
class PropertyChecker {
 public:
  virtual ~PropertyChecker() = default;
  virtual LocalVerdict evaluate(std::span<const int> subset) const = 0;
  virtual std::string description() const = 0;
  virtual const DiagramProperty* diagram_property() const { return nullptr; }
};

/// Checkers whose property is a bound between a locally computed diagram and
/// the global diagram restricted to the same subset.
class DiagramProperty {
 public:
  virtual ~DiagramProperty() = default;
  virtual PersistenceDiagram local_diagram(std::span<const int> subset) const = 0;
  virtual PersistenceDiagram global_diagram(std::span<const int> subset) const = 0;
  virtual double input_epsilon() const = 0;
  virtual int max_degree() const = 0;

  DiagramSource source() const;
};

/// Memoizing, counting front end to a checker. P(∅) holds vacuously and is
/// not counted. Safe to call from several threads.
class PropertyEvaluator {
 public:
  explicit PropertyEvaluator(const PropertyChecker& checker) : checker_(checker) {}

  LocalVerdict operator()(const std::vector<int>& members);
  /// Number of distinct nonempty subsets evaluated.
  int evaluations() const;
  const PropertyChecker& checker() const { return checker_; }

 private:
  const PropertyChecker& checker_;
  mutable std::mutex mutex_;
  std::map<std::vector<int>, LocalVerdict> cache_;
};

// ---- proof transcripts -----------------------------------------------------

struct TranscriptStep {
  int depth = 0;
  std::string rule;  // evaluate, identity, condition-ii, condition-iii, verify, layer, note
  std::string target;
  std::vector<int> members;
  bool holds = true;
  std::string note;
};

struct Transcript {
  std::vector<TranscriptStep> steps;
  bool established = true;
  std::string conclusion;  // label of the set P was carried to

  /// One line per step; stable across runs.
  std::string to_text() const;
};

struct InductionOptions {
  /// Evaluate each inferred union directly as well, catching checkers for
  /// which condition (ii) fails on sets beyond the cover's edges.
  bool verify_conclusions = false;
};

struct NamedSet {
  std::string label;
  std::vector<int> members;
};

/// Replays the finite-union induction: P(W_1), then for each next set S,
/// P(S) and P(W ∩ S) via (W∩S) = ∪ (S_i ∩ S) recursively, then condition (ii).
Transcript finite_union_induction(std::span<const NamedSet> sets, PropertyEvaluator& evaluate,
                                  InductionOptions options = {});
Transcript finite_union_induction(std::span<const int> element_ids, const Cover& cover,
                                  PropertyEvaluator& evaluate, InductionOptions options = {});

struct AssemblyReport {
  Transcript transcript;
  std::map<int, bool> layers;  // layer index -> P(A_n) established
  bool even_union = true;
  bool odd_union = true;
  bool intersection = true;
  bool established = true;
};

/// Replays the proper-function stage: P(A_n) by induction over the cover
/// pieces U_α ∩ A_n, P(U) and P(V) for the even/odd unions by condition
/// (iii), P(U∩V) over the disjoint pieces A_2i ∩ A_2j+1, then condition (ii).
/// Throws InputError when a layer point lies in no cover element.
AssemblyReport layer_assembly(const LayerDecomposition& decomposition, const Cover& cover,
                              PropertyEvaluator& evaluate, InductionOptions options = {});

// ---- Algorithm stages ------------------------------------------------------

using VerdictMap = std::map<int, LocalVerdict>;

/// Evaluates P on every element. Checker exceptions become failed verdicts.
VerdictMap verify_local(const Cover& cover, PropertyEvaluator& evaluate, int workers = 1);

struct EdgeGluing {
  int u = 0, v = 0, intersection = 0;
  bool materialized = false;
  LocalVerdict union_verdict;
  LocalVerdict intersection_verdict;
  std::optional<GluingVerdict> diagram_check;
  bool holds = true;
};

struct GluingStage {
  Cover cover;  // closed at depth 2 if intersections had to be materialized
  VerdictMap local;
  std::vector<EdgeGluing> edges;
  std::vector<std::string> warnings;

  bool holds() const;
};

/// Checks P(U_α), P(U_β), P(U_α∩U_β) => P(U_α∪U_β) on every intersection-graph edge.
GluingStage verify_gluing(const Cover& cover, PropertyEvaluator& evaluate, VerdictMap local);

struct ComponentVerdict {
  std::vector<int> element_ids;
  std::vector<int> members;
  LocalVerdict verdict;
};

struct AdditivityStage {
  std::vector<ComponentVerdict> components;
  std::optional<LocalVerdict> disjoint_union;
  std::optional<AdditivityReport> diagram_report;
  bool degenerate = false;  // single component
  bool holds = true;
};

AdditivityStage verify_additivity(const Cover& cover, PropertyEvaluator& evaluate);

struct ProtocolConfig {
  double k_delta = 1.0;
  double budget_c = 4.0;
  std::uint64_t seed = 0;
  bool verify_inferences = true;
  std::optional<std::vector<double>> proper_function;
  int workers = 1;
};

struct BredonReport {
  std::string checker;
  VerdictMap local;
  std::vector<EdgeGluing> gluing;
  AdditivityStage additivity;
  std::vector<Transcript> induction;  // one per connected component
  std::optional<AssemblyReport> assembly;

  bool local_holds = true;
  bool gluing_holds = true;
  bool induction_holds = true;
  bool assembly_holds = true;
  bool global = false;
  std::string status;  // "established" or "not established"
  std::string first_failure;

  int cover_size = 0;
  double k_delta = 1.0;
  double sup_local_epsilon = 0.0;
  double epsilon_x = 0.0;
  std::optional<double> measured_global_distance;
  bool bound_exceeded = false;

  int p_eval_count = 0;
  double budget = 0.0;
  bool within_budget = true;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
  std::string interpretation;

  /// Human-readable summary table.
  std::string to_text() const;
};

BredonReport run_protocol(const PointCloud& cloud, const Cover& cover,
                          const PropertyChecker& checker, const ProtocolConfig& config);

}  // namespace bredon
