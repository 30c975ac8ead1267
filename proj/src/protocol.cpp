#include "bredon/protocol.hpp"

#include "bredon/error.hpp"
#include "bredon/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace bredon {

DiagramSource DiagramProperty::source() const {
  return {[this](std::span<const int> s) { return local_diagram(s); },
          [this](std::span<const int> s) { return global_diagram(s); }};
}

LocalVerdict PropertyEvaluator::operator()(const std::vector<int>& members) {
  if (members.empty()) {
    LocalVerdict v;
    v.vacuous = true;
    v.evidence = "empty set, holds vacuously";
    return v;
  }
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(members); it != cache_.end()) return it->second;
  }
  LocalVerdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    v = checker_.evaluate(members);
  } catch (const std::exception& e) {
    v = LocalVerdict{};
    v.holds = false;
    v.evidence = std::string("checker error: ") + e.what();
  }
  v.cost_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::lock_guard lock(mutex_);
  return cache_.emplace(members, std::move(v)).first->second;
}

int PropertyEvaluator::evaluations() const {
  std::lock_guard lock(mutex_);
  return static_cast<int>(cache_.size());
}

// ---- transcripts -----------------------------------------------------------

std::string Transcript::to_text() const {
  std::ostringstream out;
  for (const auto& s : steps) {
    out << std::string(std::size_t(2 * s.depth), ' ') << s.rule << ' ' << s.target << ' '
        << (s.holds ? "holds" : "fails");
    if (!s.note.empty()) out << ": " << s.note;
    out << '\n';
  }
  out << (established ? "established " : "not established ") << conclusion << '\n';
  return out.str();
}

namespace {

std::string wrap(const std::string& label) {
  const bool compound = label.find("∪") != std::string::npos || label.find("∩") != std::string::npos;
  return compound ? "(" + label + ")" : label;
}

std::string join_labels(const std::vector<NamedSet>& sets, const char* op) {
  std::string s;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) s += op;
    s += sets.size() > 1 && std::string_view(op) == "∪" ? wrap(sets[i].label) : sets[i].label;
  }
  return s;
}

class Induction {
 public:
  Induction(PropertyEvaluator& evaluate, InductionOptions options, Transcript& transcript,
            int depth_limit)
      : evaluate_(evaluate), options_(options), t_(transcript), depth_limit_(depth_limit) {}

  bool evaluate(const NamedSet& s, int depth) {
    const auto v = evaluate_(s.members);
    t_.steps.push_back({depth, "evaluate", s.label, s.members, v.holds, v.vacuous ? "vacuous" : ""});
    return v.holds;
  }

  /// Establishes P on the union of `sets`; returns whether it was carried through.
  bool union_of(const std::vector<NamedSet>& sets, int depth) {
    if (depth > depth_limit_)
      throw std::logic_error("finite_union_induction: recursion deeper than the element count");
    if (sets.empty()) return true;
    NamedSet w = sets.front();
    if (!evaluate(w, depth)) return false;
    for (std::size_t n = 1; n < sets.size(); ++n) {
      const auto& s = sets[n];
      const bool s_holds = evaluate(s, depth);

      std::vector<NamedSet> pieces;
      for (std::size_t i = 0; i < n; ++i) {
        auto m = set_intersection(sets[i].members, s.members);
        if (!m.empty()) pieces.push_back({wrap(sets[i].label) + "∩" + wrap(s.label), std::move(m)});
      }
      const std::string meet = wrap(w.label) + "∩" + wrap(s.label);
      const auto meet_members = set_intersection(w.members, s.members);
      bool meet_holds = true;
      if (pieces.empty()) {
        t_.steps.push_back({depth, "identity", meet, {}, true, "empty, holds vacuously"});
      } else {
        t_.steps.push_back({depth, "identity", meet, meet_members, true, "= " + join_labels(pieces, "∪")});
        meet_holds = union_of(pieces, depth + 1);
        if (meet_holds && pieces.size() > 1) meet_holds = verify(meet, meet_members, depth);
      }

      NamedSet next{wrap(w.label) + "∪" + wrap(s.label), set_union(w.members, s.members)};
      const bool ok = s_holds && meet_holds;
      t_.steps.push_back({depth, "condition-ii", next.label, next.members, ok,
                          ok ? "from " + w.label + ", " + s.label + ", " + meet
                             : "premise failed, induction stops"});
      if (!ok) return false;
      if (!verify(next.label, next.members, depth)) return false;
      w = std::move(next);
    }
    return true;
  }

  bool verify(const std::string& label, const std::vector<int>& members, int depth) {
    if (!options_.verify_conclusions) return true;
    const auto v = evaluate_(members);
    t_.steps.push_back({depth, "verify", label, members, v.holds,
                        v.holds ? "" : "inferred but fails on direct evaluation: " + v.evidence});
    return v.holds;
  }

 private:
  PropertyEvaluator& evaluate_;
  InductionOptions options_;
  Transcript& t_;
  int depth_limit_;
};

}  // namespace

Transcript finite_union_induction(std::span<const NamedSet> sets_in, PropertyEvaluator& evaluate,
                                  InductionOptions options) {
  Transcript t;
  std::vector<NamedSet> sets(sets_in.begin(), sets_in.end());
  for (auto& s : sets) s.members = normalized(std::move(s.members));
  t.conclusion = sets.empty() ? "∅" : join_labels(sets, "∪");
  Induction ind(evaluate, options, t, int(sets.size()));
  t.established = ind.union_of(sets, 0);
  return t;
}

Transcript finite_union_induction(std::span<const int> element_ids, const Cover& cover,
                                  PropertyEvaluator& evaluate, InductionOptions options) {
  std::vector<NamedSet> sets;
  for (int id : element_ids) sets.push_back({"U" + std::to_string(id), cover.element(id).members});
  return finite_union_induction(sets, evaluate, options);
}

AssemblyReport layer_assembly(const LayerDecomposition& decomposition, const Cover& cover,
                              PropertyEvaluator& evaluate, InductionOptions options) {
  AssemblyReport report;
  auto& t = report.transcript;
  t.conclusion = "X";

  std::vector<NamedSet> layer_sets;
  for (const auto& layer : decomposition.layers) {
    const std::string a = "A" + std::to_string(layer.index);
    std::vector<NamedSet> pieces;
    std::set<std::vector<int>> seen;
    std::vector<int> covered;
    for (const auto& e : cover.elements()) {
      auto m = set_intersection(e.members, layer.members);
      if (m.empty() || !seen.insert(m).second) continue;
      covered = set_union(covered, m);
      pieces.push_back({"U" + std::to_string(e.id) + "∩" + a, std::move(m)});
    }
    if (covered != layer.members)
      throw InputError("layer " + a + " is not covered by the cover elements; use a coarser proper function");

    t.steps.push_back({0, "note", a, layer.members, true,
                       "finite union of " + std::to_string(pieces.size()) + " cover pieces"});
    Transcript sub;
    Induction ind(evaluate, options, sub, int(pieces.size()));
    bool ok = ind.union_of(pieces, 1);
    if (ok && pieces.size() > 1) ok = ind.verify(a, layer.members, 1);
    t.steps.insert(t.steps.end(), sub.steps.begin(), sub.steps.end());
    t.steps.push_back({0, "layer", a, layer.members, ok, ""});
    report.layers[layer.index] = ok;
    layer_sets.push_back({a, layer.members});
  }

  auto all_layers = [&](bool ok) {
    report.established = ok;
    t.established = ok;
    return report;
  };
  bool layers_ok = std::all_of(report.layers.begin(), report.layers.end(),
                               [](const auto& kv) { return kv.second; });
  if (layer_sets.size() <= 1) return all_layers(layers_ok);

  Induction top(evaluate, options, t, 1);
  auto disjoint_family = [&](const std::string& label, const std::vector<NamedSet>& parts,
                             const std::vector<int>& members, bool parts_hold) {
    std::string note = parts.empty()       ? "empty, holds vacuously"
                       : parts.size() == 1 ? "single piece " + parts.front().label
                                           : "disjoint " + join_labels(parts, ", ");
    t.steps.push_back({0, "condition-iii", label, members, parts_hold, note});
    if (!parts_hold) return false;
    if (parts.size() > 1) return top.verify(label, members, 0);
    return true;
  };

  std::vector<NamedSet> even, odd;
  for (const auto& s : layer_sets) {
    const int n = std::stoi(s.label.substr(1));
    (n % 2 == 0 ? even : odd).push_back(s);
  }
  auto layers_hold = [&](const std::vector<NamedSet>& parts) {
    return std::all_of(parts.begin(), parts.end(),
                       [&](const NamedSet& s) { return report.layers[std::stoi(s.label.substr(1))]; });
  };
  report.even_union = disjoint_family("U=" + join_labels(even, "∪"), even, decomposition.even_union,
                                      layers_hold(even));
  report.odd_union = disjoint_family("V=" + join_labels(odd, "∪"), odd, decomposition.odd_union,
                                     layers_hold(odd));

  std::vector<NamedSet> meets;
  bool meets_hold = true;
  for (const auto& e : even)
    for (const auto& o : odd) {
      auto m = set_intersection(e.members, o.members);
      if (m.empty()) continue;
      NamedSet piece{e.label + "∩" + o.label, std::move(m)};
      meets_hold = top.evaluate(piece, 1) && meets_hold;
      meets.push_back(std::move(piece));
    }
  report.intersection = disjoint_family(
      "U∩V", meets, set_intersection(decomposition.even_union, decomposition.odd_union), meets_hold);

  std::vector<int> all = set_union(decomposition.even_union, decomposition.odd_union);
  const bool ok = report.even_union && report.odd_union && report.intersection;
  t.steps.push_back({0, "condition-ii", "X=U∪V", all, ok, ok ? "from U, V, U∩V" : "premise failed"});
  bool established = ok && layers_ok;
  if (ok) established = top.verify("X", all, 0) && established;
  return all_layers(established);
}

// ---- stages ----------------------------------------------------------------

VerdictMap verify_local(const Cover& cover, PropertyEvaluator& evaluate, int workers) {
  auto verdicts = parallel_map(
      std::size_t(cover.size()),
      [&](std::size_t i) { return evaluate(cover.element(int(i)).members); }, workers);
  VerdictMap out;
  for (std::size_t i = 0; i < verdicts.size(); ++i) out.emplace(int(i), std::move(verdicts[i]));
  return out;
}

bool GluingStage::holds() const {
  return std::all_of(edges.begin(), edges.end(), [](const EdgeGluing& e) { return e.holds; });
}

GluingStage verify_gluing(const Cover& cover, PropertyEvaluator& evaluate, VerdictMap local) {
  GluingStage stage;
  stage.cover = cover;
  const auto edges = cover.edges();

  const bool missing = std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return !cover.find_by_members(
        set_intersection(cover.element(e.first).members, cover.element(e.second).members));
  });
  if (missing) {
    stage.cover = close_under_intersections(cover, 2);
    const int added = stage.cover.size() - cover.size();
    stage.warnings.push_back("materialized " + std::to_string(added) +
                             " missing pairwise intersections (depth 2)");
  }
  for (int id = 0; id < stage.cover.size(); ++id)
    if (!local.count(id)) local.emplace(id, evaluate(stage.cover.element(id).members));

  const auto* diagrams = evaluate.checker().diagram_property();
  for (const auto& [a, b] : edges) {
    EdgeGluing g;
    g.u = a;
    g.v = b;
    const auto& ua = stage.cover.element(a).members;
    const auto& ub = stage.cover.element(b).members;
    const auto inter = *stage.cover.find_by_members(set_intersection(ua, ub));
    g.intersection = inter;
    g.materialized = inter >= cover.size();
    g.intersection_verdict = local.at(inter);
    g.union_verdict = evaluate(set_union(ua, ub));
    const bool premises = local.at(a).holds && local.at(b).holds && g.intersection_verdict.holds;
    g.holds = !premises || g.union_verdict.holds;

    if (diagrams && premises) {
      const double eps = diagrams->input_epsilon();
      std::map<int, double> constants;
      std::map<int, PersistenceDiagram> dgms;
      for (int id : {a, b, inter}) {
        constants[id] = eps > 0.0 ? local.at(id).epsilon / eps : 0.0;
        dgms[id] = diagrams->local_diagram(stage.cover.element(id).members);
      }
      g.diagram_check = gluing_check(constants, {a, b}, stage.cover, dgms, diagrams->source(), eps,
                                     diagrams->max_degree());
      g.holds = g.holds && g.diagram_check->holds;
    }
    stage.edges.push_back(std::move(g));
  }
  stage.local = std::move(local);
  return stage;
}

AdditivityStage verify_additivity(const Cover& cover, PropertyEvaluator& evaluate) {
  AdditivityStage stage;
  const auto graph = intersection_graph(cover);
  if (graph.components.size() <= 1) {
    stage.degenerate = true;
    return stage;
  }
  std::vector<int> all;
  for (const auto& ids : graph.components) {
    ComponentVerdict c;
    c.element_ids = ids;
    for (int id : ids) c.members = set_union(c.members, cover.element(id).members);
    c.verdict = evaluate(c.members);
    stage.holds = stage.holds && c.verdict.holds;
    all = set_union(all, c.members);
    stage.components.push_back(std::move(c));
  }
  stage.disjoint_union = evaluate(all);
  stage.holds = stage.holds && stage.disjoint_union->holds;

  if (const auto* dp = evaluate.checker().diagram_property()) {
    std::vector<ComponentPiece> pieces;
    for (const auto& c : stage.components)
      pieces.push_back({c.element_ids, c.members, dp->global_diagram(c.members), std::nullopt});
    const auto global = dp->global_diagram(all);
    stage.diagram_report = additivity_check(pieces, &global, dp->max_degree());
    stage.holds = stage.holds && stage.diagram_report->holds;
  }
  return stage;
}

// ---- protocol --------------------------------------------------------------

namespace {

std::vector<int> bfs_order(const IntersectionGraph& graph, const std::vector<int>& component,
                           const Cover& cover) {
  auto base = [&](int id) {
    return !std::holds_alternative<IntersectionSource>(cover.element(id).provenance);
  };
  std::vector<int> order;
  std::vector<bool> seen(graph.adjacency.size(), false);
  std::deque<int> queue{component.front()};
  seen[std::size_t(component.front())] = true;
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    order.push_back(id);
    auto next = graph.adjacency[std::size_t(id)];
    std::sort(next.begin(), next.end());
    for (int n : next)
      if (!seen[std::size_t(n)]) {
        seen[std::size_t(n)] = true;
        queue.push_back(n);
      }
  }
  std::vector<int> out;
  std::copy_if(order.begin(), order.end(), std::back_inserter(out), base);
  return out.empty() ? order : out;
}

std::string first_failed_step(const Transcript& t) {
  for (const auto& s : t.steps)
    if (!s.holds) return s.rule + " " + s.target + (s.note.empty() ? "" : ": " + s.note);
  return "conclusion " + t.conclusion;
}

std::string format_number(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

}  // namespace

BredonReport run_protocol(const PointCloud& cloud, const Cover& cover,
                          const PropertyChecker& checker, const ProtocolConfig& config) {
  if (cover.ground_set_size() != cloud.size())
    throw InputError("run_protocol: cover ground set has " + std::to_string(cover.ground_set_size()) +
                     " points but the cloud has " + std::to_string(cloud.size()));
  if (!(config.k_delta > 0.0)) throw InputError("run_protocol: K(delta) must be positive");
  if (!(config.budget_c > 0.0)) throw InputError("run_protocol: budget constant must be positive");

  BredonReport r;
  r.checker = checker.description();
  r.k_delta = config.k_delta;
  r.seed = config.seed;
  PropertyEvaluator evaluate(checker);
  Cover final_cover = cover;

  auto fail = [&](std::string what) {
    if (r.first_failure.empty()) r.first_failure = std::move(what);
  };

  r.local = verify_local(cover, evaluate, config.workers);
  for (const auto& [id, v] : r.local)
    if (!v.holds) {
      r.local_holds = false;
      fail("local: U" + std::to_string(id) + " fails: " + v.evidence);
      break;
    }

  if (r.local_holds) {
    auto gluing = verify_gluing(cover, evaluate, r.local);
    final_cover = gluing.cover;
    r.local = std::move(gluing.local);
    r.gluing = std::move(gluing.edges);
    r.warnings = std::move(gluing.warnings);
    for (const auto& g : r.gluing)
      if (!g.holds) {
        r.gluing_holds = false;
        std::string why = g.union_verdict.holds ? "diagram bound violated by " +
                                                      format_number(g.diagram_check->violation)
                                                : "P(U" + std::to_string(g.u) + "∪U" + std::to_string(g.v) +
                                                      ") fails: " + g.union_verdict.evidence;
        fail("gluing: edge (U" + std::to_string(g.u) + ",U" + std::to_string(g.v) + "): " + why);
        break;
      }
  }

  if (r.local_holds && r.gluing_holds) {
    r.additivity = verify_additivity(final_cover, evaluate);
    if (!r.additivity.holds) fail("additivity: condition (iii) fails on the component family");

    const auto graph = intersection_graph(final_cover);
    for (std::size_t c = 0; c < graph.components.size(); ++c) {
      const auto ids = bfs_order(graph, graph.components[c], final_cover);
      auto t = finite_union_induction(ids, final_cover, evaluate, {config.verify_inferences});
      if (!t.established) {
        r.induction_holds = false;
        fail("induction: component " + std::to_string(c) + ": " + first_failed_step(t));
      }
      r.induction.push_back(std::move(t));
    }

    if (config.proper_function) {
      const auto decomposition = layer_decomposition(cloud, *config.proper_function);
      r.assembly = layer_assembly(decomposition, final_cover, evaluate, {config.verify_inferences});
      r.assembly_holds = r.assembly->established;
      if (!r.assembly_holds) fail("layer assembly: " + first_failed_step(r.assembly->transcript));
    }
  }

  r.cover_size = final_cover.size();
  for (const auto& [id, v] : r.local) r.sup_local_epsilon = std::max(r.sup_local_epsilon, v.epsilon);
  r.epsilon_x = r.k_delta * r.sup_local_epsilon;

  r.p_eval_count = evaluate.evaluations();
  r.budget = config.budget_c * double(r.cover_size) * double(r.cover_size);
  r.within_budget = r.p_eval_count <= r.budget;
  if (!r.within_budget) fail("budget: " + std::to_string(r.p_eval_count) + " evaluations exceed " +
                             format_number(r.budget));

  r.global = r.local_holds && r.gluing_holds && r.additivity.holds && r.induction_holds &&
             r.assembly_holds && r.within_budget;
  r.status = r.global ? "established" : "not established";

  if (const auto* dp = checker.diagram_property(); dp && r.global) {
    std::vector<int> all(std::size_t(cloud.size()));
    for (int i = 0; i < cloud.size(); ++i) all[std::size_t(i)] = i;
    r.measured_global_distance =
        bottleneck_max(dp->local_diagram(all), dp->global_diagram(all), dp->max_degree());
    r.bound_exceeded = *r.measured_global_distance > r.epsilon_x + kMatchTolerance;
    if (r.bound_exceeded)
      r.warnings.push_back("measured global distance " + format_number(*r.measured_global_distance) +
                           " exceeds epsilon_X " + format_number(r.epsilon_x) +
                           "; recalibrate K(delta)");
  }

  r.interpretation =
      r.global ? "every local, gluing, additivity and induction condition held, so P(X) follows"
               : "a condition failed, so P(X) is not established; this does not show that P(X) is false";
  if (checker.diagram_property())
    r.interpretation += ". Diagram closeness is decided by bottleneck distance, read as epsilon-interleaving";
  return r;
}

std::string BredonReport::to_text() const {
  std::ostringstream out;
  out << "checker          " << checker << '\n'
      << "status           " << status << '\n';
  if (!first_failure.empty()) out << "first failure    " << first_failure << '\n';
  out << "local            " << (local_holds ? "pass" : "FAIL") << " (" << local.size() << " elements)\n";
  if (!local_holds) {
    out << "gluing           skipped\n";
  } else {
    out << "gluing           " << (gluing_holds ? "pass" : "FAIL") << " (" << gluing.size() << " edges)\n";
  }
  if (!local_holds || !gluing_holds) {
    out << "additivity       skipped\n"
        << "induction        skipped\n";
  } else {
    out << "additivity       " << (additivity.holds ? "pass" : "FAIL")
        << (additivity.degenerate ? " (single component)" : "") << '\n'
        << "induction        " << (induction_holds ? "pass" : "FAIL") << " (" << induction.size()
        << (induction.size() == 1 ? " component)\n" : " components)\n");
  }
  if (assembly) out << "layer assembly   " << (assembly_holds ? "pass" : "FAIL") << '\n';
  out << "K(delta)         " << format_number(k_delta) << '\n'
      << "sup local eps    " << format_number(sup_local_epsilon) << '\n'
      << "epsilon_X        " << format_number(epsilon_x) << '\n';
  if (measured_global_distance)
    out << "measured d_B     " << format_number(*measured_global_distance)
        << (bound_exceeded ? " (exceeds epsilon_X)" : "") << '\n';
  out << "P evaluations    " << p_eval_count << " / budget " << format_number(budget)
      << (within_budget ? "" : " (over budget)") << '\n'
      << "seed             " << seed << '\n';
  for (const auto& w : warnings) out << "warning          " << w << '\n';
  out << "\nelement  holds  epsilon        evidence\n";
  for (const auto& [id, v] : local)
    out << std::left << std::setw(9) << ("U" + std::to_string(id)) << std::setw(7)
        << (v.holds ? "yes" : "no") << std::setw(15) << format_number(v.epsilon) << v.evidence << '\n';
  out << '\n' << interpretation << '\n';
  return out.str();
}

}  // namespace bredon
