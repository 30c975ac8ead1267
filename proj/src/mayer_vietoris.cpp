#include "bredon/mayer_vietoris.hpp"

#include "bredon/gf2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bredon {

namespace {

bool subset_of(const std::vector<int>& simplex, std::span<const int> set) {
  return std::includes(set.begin(), set.end(), simplex.begin(), simplex.end());
}

/// Cycles and boundaries of a full subcomplex, in the coordinates of the
/// union's chain groups.
class Subcomplex {
 public:
  Subcomplex(const ChainComplex& ambient, std::span<const int> vertices)
      : ambient_(ambient) {
    for (int k = 0; k <= ambient.top_dim(); ++k) {
      std::vector<bool> in;
      for (const auto& c : ambient.cells(k)) in.push_back(subset_of(c, vertices));
      member_.push_back(std::move(in));
    }
  }

  bool contains(int k, std::size_t cell) const {
    return k >= 0 && k < int(member_.size()) && member_[std::size_t(k)][cell];
  }

  std::size_t count(int k) const {
    if (k < 0 || k >= int(member_.size())) return 0;
    return std::size_t(std::count(member_[std::size_t(k)].begin(), member_[std::size_t(k)].end(), true));
  }

  std::vector<gf2::BitVector> cycles(int k) const {
    std::vector<std::size_t> cells;
    std::vector<gf2::BitVector> cols;
    for (std::size_t c = 0; c < ambient_.count(k); ++c)
      if (contains(k, c)) {
        cells.push_back(c);
        cols.push_back(ambient_.boundary_of(k, c));
      }
    std::vector<gf2::BitVector> out;
    for (const auto& combo : gf2::kernel_basis(cols)) {
      gf2::BitVector z(ambient_.count(k));
      for (std::size_t j = 0; j < cells.size(); ++j)
        if (combo.test(j)) z.set(cells[j]);
      out.push_back(std::move(z));
    }
    return out;
  }

  std::vector<gf2::BitVector> boundaries(int k) const {
    std::vector<gf2::BitVector> out;
    for (std::size_t c = 0; c < ambient_.count(k + 1); ++c)
      if (contains(k + 1, c)) out.push_back(ambient_.boundary_of(k + 1, c));
    return out;
  }

  long euler() const {
    long chi = 0;
    for (int k = 0; k < int(member_.size()); ++k) chi += (k % 2 == 0 ? 1 : -1) * long(count(k));
    return chi;
  }

 private:
  const ChainComplex& ambient_;
  std::vector<std::vector<bool>> member_;
};

int rank_of(std::vector<gf2::BitVector> cols) { return int(gf2::rank(std::move(cols))); }

/// rank of span(images) in the quotient by span(relations).
int quotient_rank(std::vector<gf2::BitVector> images, const std::vector<gf2::BitVector>& relations) {
  const int base = rank_of(relations);
  images.insert(images.end(), relations.begin(), relations.end());
  return rank_of(std::move(images)) - base;
}

int homology_dim(const Subcomplex& x, int k) {
  return int(x.cycles(k).size()) - rank_of(x.boundaries(k));
}

}  // namespace

bool MVSequenceReport::exact() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const MVDegree& d) { return d.exact(); });
}

MVSequenceReport mv_exactness(const Filtration& ambient, std::span<const int> u_in,
                              std::span<const int> v_in, double at_scale, int max_degree) {
  if (max_degree < 0) throw InputError("mv_exactness: max_degree must be nonnegative");
  const auto u = normalized({u_in.begin(), u_in.end()});
  const auto v = normalized({v_in.begin(), v_in.end()});
  const auto both = set_union(u, v);
  const auto meet = set_intersection(u, v);

  std::vector<Simplex> cells;
  for (const auto& s : ambient.simplices()) {
    if (s.value > at_scale || !subset_of(s.vertices, both)) continue;
    if (!subset_of(s.vertices, u) && !subset_of(s.vertices, v)) throw CoverageError(s.vertices);
    cells.push_back(s);
  }
  const ChainComplex chain(cells);
  const Subcomplex xu(chain, u), xv(chain, v), xi(chain, meet), xx(chain, both);

  MVSequenceReport report;
  report.scale = at_scale;
  report.euler_u = xu.euler();
  report.euler_v = xv.euler();
  report.euler_intersection = xi.euler();
  report.euler_union = xx.euler();

  // rank of the connecting map H_k(U∪V) -> H_{k-1}(U∩V).
  auto connecting = [&](int k) {
    if (k <= 0) return 0;
    std::vector<gf2::BitVector> images;
    for (const auto& z : xx.cycles(k)) {
      gf2::BitVector a(chain.count(k));
      for (std::size_t c = 0; c < chain.count(k); ++c)
        if (z.test(c) && xu.contains(k, c)) a.set(c);
      gf2::BitVector da(chain.count(k - 1));
      for (std::size_t c = 0; c < chain.count(k); ++c)
        if (a.test(c)) da ^= chain.boundary_of(k, c);
      images.push_back(std::move(da));
    }
    return quotient_rank(std::move(images), xi.boundaries(k - 1));
  };

  for (int k = 0; k <= max_degree; ++k) {
    MVDegree d;
    d.degree = k;
    d.dim_intersection = homology_dim(xi, k);
    d.dim_sum = homology_dim(xu, k) + homology_dim(xv, k);
    d.dim_union = homology_dim(xx, k);

    const std::size_t n = chain.count(k);
    gf2::BitVector zero(n);
    std::vector<gf2::BitVector> sum_relations;
    for (const auto& b : xu.boundaries(k)) sum_relations.push_back(b.concat(zero));
    for (const auto& b : xv.boundaries(k)) sum_relations.push_back(zero.concat(b));
    std::vector<gf2::BitVector> alpha;
    for (const auto& z : xi.cycles(k)) alpha.push_back(z.concat(z));
    d.rank_restriction = quotient_rank(std::move(alpha), sum_relations);

    auto beta = xu.cycles(k);
    for (auto& z : xv.cycles(k)) beta.push_back(std::move(z));
    d.rank_inclusion = quotient_rank(std::move(beta), xx.boundaries(k));

    d.rank_connecting = connecting(k);
    d.rank_connecting_in = connecting(k + 1);

    d.exact_at_intersection = d.rank_connecting_in == d.dim_intersection - d.rank_restriction;
    d.exact_at_sum = d.rank_restriction == d.dim_sum - d.rank_inclusion;
    d.exact_at_union = d.rank_inclusion == d.dim_union - d.rank_connecting;
    report.degrees.push_back(d);
  }
  return report;
}

GluingVerdict gluing_check(const std::map<int, double>& local_constants, std::pair<int, int> pair,
                           const Cover& cover, const std::map<int, PersistenceDiagram>& diagrams,
                           const DiagramSource& source, double input_epsilon, int max_degree) {
  const auto [a, b] = pair;
  if (a < 0 || b < 0 || a >= cover.size() || b >= cover.size())
    throw InputError("gluing_check: element id out of range");
  const auto& ua = cover.element(a).members;
  const auto& ub = cover.element(b).members;
  const auto meet = set_intersection(ua, ub);
  if (meet.empty())
    throw InputError("gluing_check: U" + std::to_string(a) + " and U" + std::to_string(b) +
                     " do not intersect");
  const auto inter = cover.find_by_members(meet);
  if (!inter)
    throw InputError("gluing_check: the intersection of U" + std::to_string(a) + " and U" +
                     std::to_string(b) +
                     " is not a cover element; close the cover under intersections first");

  auto constant = [&](int id) {
    auto it = local_constants.find(id);
    if (it == local_constants.end())
      throw InputError("gluing_check: no local constant for U" + std::to_string(id));
    return it->second;
  };
  auto diagram = [&](int id) -> const PersistenceDiagram& {
    auto it = diagrams.find(id);
    if (it == diagrams.end())
      throw InputError("gluing_check: no local diagram for U" + std::to_string(id));
    return it->second;
  };

  GluingVerdict g;
  g.u = a;
  g.v = b;
  g.intersection = *inter;
  g.k_u = constant(a);
  g.k_v = constant(b);
  g.k_intersection = constant(*inter);
  g.k_glued = std::max({g.k_u, g.k_v, g.k_intersection});
  g.input_epsilon = input_epsilon;
  g.bound = g.k_glued * input_epsilon;

  auto excess = [&](double distance, double k) {
    return distance - (k * input_epsilon + kMatchTolerance);
  };
  g.distance_u = bottleneck_max(diagram(a), source.global(ua), max_degree);
  g.distance_v = bottleneck_max(diagram(b), source.global(ub), max_degree);
  g.distance_intersection = bottleneck_max(diagram(*inter), source.global(meet), max_degree);
  const double hyp = std::max({excess(g.distance_u, g.k_u), excess(g.distance_v, g.k_v),
                               excess(g.distance_intersection, g.k_intersection)});
  g.hypotheses_hold = hyp <= 0.0;

  const auto joined = set_union(ua, ub);
  g.union_distance = bottleneck_max(source.local(joined), source.global(joined), max_degree);
  const double con = excess(g.union_distance, g.k_glued);
  g.conclusion_holds = con <= 0.0;

  g.holds = g.hypotheses_hold && g.conclusion_holds;
  g.violation = g.holds ? 0.0 : std::max(0.0, std::max(hyp, con) + kMatchTolerance);
  return g;
}

AdditivityReport additivity_check(std::span<const ComponentPiece> components,
                                  const PersistenceDiagram* global, int max_degree) {
  for (std::size_t i = 0; i < components.size(); ++i)
    for (std::size_t j = i + 1; j < components.size(); ++j)
      if (intersects(components[i].members, components[j].members))
        throw InputError("additivity_check: components " + std::to_string(i) + " and " +
                         std::to_string(j) + " share a point");

  AdditivityReport report;
  for (const auto& c : components) report.union_diagram = multiset_union(report.union_diagram, c.diagram);
  report.union_diagram.sort();

  auto degree_only = [](const PersistenceDiagram& d, int k) {
    PersistenceDiagram out;
    out.bars[k] = d.degree(k);
    return out;
  };
  auto compare = [&](const PersistenceDiagram& other) {
    bool same = true;
    for (int k = 0; k <= max_degree; ++k)
      if (!same_multiset(degree_only(report.union_diagram, k), degree_only(other, k),
                         kAdditivityTolerance)) {
        same = false;
        if (!std::count(report.mismatched_degrees.begin(), report.mismatched_degrees.end(), k))
          report.mismatched_degrees.push_back(k);
      }
    return same;
  };

  const bool all_complexes = !components.empty() &&
      std::all_of(components.begin(), components.end(), [](const ComponentPiece& c) { return c.complex.has_value(); });
  if (all_complexes) {
    Filtration joined = *components.front().complex;
    for (std::size_t i = 1; i < components.size(); ++i) joined = disjoint_union(joined, *components[i].complex);
    report.matches_disjoint_union = compare(compute_persistence(joined, max_degree));
  }
  if (global) report.matches_global = compare(*global);
  std::sort(report.mismatched_degrees.begin(), report.mismatched_degrees.end());
  report.holds = report.matches_disjoint_union.value_or(true) && report.matches_global.value_or(true);
  return report;
}

}  // namespace bredon
