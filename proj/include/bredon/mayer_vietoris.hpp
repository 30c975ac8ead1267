#pragma once

#include "bredon/complex.hpp"
#include "bredon/cover.hpp"
#include "bredon/diagram_metrics.hpp"
#include "bredon/error.hpp"
#include "bredon/persistence.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bredon {

/// A simplex of the ambient complex on u ∪ v that lies in neither u nor v.
class CoverageError : public InputError {
 public:
  explicit CoverageError(std::vector<int> simplex)
      : InputError("cover-not-fine-enough: simplex " + format_simplex(simplex) +
                   " straddles u and v; refine the cover scale"),
        simplex_(std::move(simplex)) {}
  const std::vector<int>& simplex() const { return simplex_; }

 private:
  std::vector<int> simplex_;
};

/// One degree of ... -> H_k(U∩V) -a-> H_k(U)⊕H_k(V) -b-> H_k(U∪V) -c-> H_{k-1}(U∩V) -> ...
struct MVDegree {
  int degree = 0;
  int dim_intersection = 0;
  int dim_sum = 0;
  int dim_union = 0;
  int rank_restriction = 0;   // a: x -> (x|U, x|V)
  int rank_inclusion = 0;     // b: (y, z) -> y + z
  int rank_connecting = 0;    // c: H_k(U∪V) -> H_{k-1}(U∩V)
  int rank_connecting_in = 0; // H_{k+1}(U∪V) -> H_k(U∩V)
  bool exact_at_intersection = true;
  bool exact_at_sum = true;
  bool exact_at_union = true;

  bool exact() const { return exact_at_intersection && exact_at_sum && exact_at_union; }
};

struct MVSequenceReport {
  double scale = 0.0;
  std::vector<MVDegree> degrees;
  long euler_u = 0, euler_v = 0, euler_intersection = 0, euler_union = 0;

  bool exact() const;
};

/// Builds the four restricted complexes at `at_scale` and checks exactness of
/// the Mayer-Vietoris sequence in degrees 0..max_degree. Throws CoverageError
/// when some simplex on u ∪ v lies wholly in neither u nor v.
MVSequenceReport mv_exactness(const Filtration& ambient, std::span<const int> u,
                              std::span<const int> v, double at_scale, int max_degree);

/// How to obtain the diagram a worker computes for a member set (local) and
/// the diagram of the global complex restricted to it.
struct DiagramSource {
  std::function<PersistenceDiagram(std::span<const int>)> local;
  std::function<PersistenceDiagram(std::span<const int>)> global;
};

struct GluingVerdict {
  int u = 0, v = 0, intersection = 0;
  double k_u = 0, k_v = 0, k_intersection = 0;
  double k_glued = 0;  // max of the three
  double input_epsilon = 0;
  double bound = 0;    // k_glued * input_epsilon
  double distance_u = 0, distance_v = 0, distance_intersection = 0;
  double union_distance = 0;
  bool hypotheses_hold = true;
  bool conclusion_holds = true;
  bool holds = true;
  double violation = 0;  // largest excess over a bound, 0 when holding
};

/// Glued-constant rule K' = max{K_U, K_V, K_U∩V}. The three supplied local
/// diagrams must sit within K_α * epsilon of the global restrictions, and the
/// locally computed union diagram within K' * epsilon of the global one.
/// Throws InputError if the intersection element is missing from the cover.
GluingVerdict gluing_check(const std::map<int, double>& local_constants, std::pair<int, int> pair,
                           const Cover& cover, const std::map<int, PersistenceDiagram>& diagrams,
                           const DiagramSource& source, double input_epsilon, int max_degree);

struct ComponentPiece {
  std::vector<int> element_ids;
  std::vector<int> members;
  PersistenceDiagram diagram;
  std::optional<Filtration> complex;
};

struct AdditivityReport {
  bool holds = true;
  PersistenceDiagram union_diagram;
  std::optional<bool> matches_disjoint_union;  // set when every piece has a complex
  std::optional<bool> matches_global;
  std::vector<int> mismatched_degrees;
};

inline constexpr double kAdditivityTolerance = 1e-12;

/// Throws InputError if two pieces share a member.
AdditivityReport additivity_check(std::span<const ComponentPiece> components,
                                  const PersistenceDiagram* global, int max_degree);

}  // namespace bredon
