#include "bredon/io.hpp"

#include "bredon/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bredon {

namespace {

json number(double x) {
  if (std::isnan(x)) throw std::domain_error("cannot encode NaN");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double read_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    throw InputError("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw InputError("expected a number, got " + j.dump());
  return j.get<double>();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_double(const std::string& s) {
  double x = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [p, ec] = std::from_chars(first, s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return x;
}

json provenance_json(const Provenance& p) {
  json j{{"kind", provenance_kind(p)}};
  if (const auto* b = std::get_if<BallSource>(&p)) {
    j["center"] = b->center;
    j["radius"] = b->radius;
  } else if (const auto* g = std::get_if<GridCellSource>(&p)) {
    j["ranges"] = json::array();
    for (const auto& [lo, hi] : g->ranges) j["ranges"].push_back({number(lo), number(hi)});
  } else if (const auto* i = std::get_if<IntersectionSource>(&p)) {
    j["parents"] = i->parents;
  }
  return j;
}

Provenance provenance_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "explicit") return ExplicitSource{};
  if (kind == "ball") return BallSource{j.at("center").get<int>(), read_number(j.at("radius"))};
  if (kind == "grid-cell") {
    GridCellSource g;
    for (const auto& r : j.at("ranges")) g.ranges.emplace_back(read_number(r.at(0)), read_number(r.at(1)));
    return g;
  }
  if (kind == "intersection") return IntersectionSource{j.at("parents").get<std::vector<int>>()};
  throw InputError("unknown provenance kind \"" + kind + "\"");
}

json verdict_json(const LocalVerdict& v) {
  return {{"holds", v.holds},   {"epsilon", number(v.epsilon)}, {"ratio", number(v.ratio)},
          {"vacuous", v.vacuous}, {"evidence", v.evidence},     {"betti", v.betti}};
}

json gluing_json(const GluingVerdict& g) {
  return {{"u", g.u},
          {"v", g.v},
          {"intersection", g.intersection},
          {"k_u", number(g.k_u)},
          {"k_v", number(g.k_v)},
          {"k_intersection", number(g.k_intersection)},
          {"k_glued", number(g.k_glued)},
          {"input_epsilon", number(g.input_epsilon)},
          {"bound", number(g.bound)},
          {"distance_u", number(g.distance_u)},
          {"distance_v", number(g.distance_v)},
          {"distance_intersection", number(g.distance_intersection)},
          {"union_distance", number(g.union_distance)},
          {"hypotheses_hold", g.hypotheses_hold},
          {"conclusion_holds", g.conclusion_holds},
          {"holds", g.holds},
          {"violation", number(g.violation)}};
}

}  // namespace

PointCloud read_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::string line;
  int line_no = 0;
  bool first = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split_row(t);
    std::string label;
    if (options.label_column) {
      if (cells.size() < 2) throw InputError("line " + std::to_string(line_no) + ": missing label column");
      label = cells.back();
      cells.pop_back();
    }
    std::vector<double> row;
    std::optional<std::string> bad;
    for (const auto& c : cells) {
      auto x = parse_double(c);
      if (!x) {
        bad = c;
        break;
      }
      row.push_back(*x);
    }
    if (first) {
      first = false;
      if (options.header || bad) continue;
    }
    if (bad)
      throw InputError("line " + std::to_string(line_no) + ": invalid number '" + *bad + "'");
    for (double x : row)
      if (!std::isfinite(x)) throw InputError("line " + std::to_string(line_no) + ": non-finite value");
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                       " columns, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
    if (options.label_column) labels.push_back(std::move(label));
  }
  auto cloud = PointCloud::from_rows(rows);
  cloud.labels = std::move(labels);
  return cloud;
}

PointCloud read_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_csv(in, options);
}

json to_json(const Cover& cover) {
  json elements = json::array();
  for (const auto& e : cover.elements())
    elements.push_back({{"id", e.id}, {"members", e.members}, {"provenance", provenance_json(e.provenance)}});
  json edges = json::array();
  for (const auto& [a, b] : cover.edges()) edges.push_back({a, b});
  return {{"schema_version", kSchemaVersion},
          {"type", "cover"},
          {"ground_set_size", cover.ground_set_size()},
          {"delta", number(cover.delta())},
          {"elements", elements},
          {"edges", edges}};
}

Cover cover_from_json(const json& j) {
  try {
    std::vector<CoverElement> elements;
    for (const auto& e : j.at("elements")) {
      CoverElement c;
      c.id = e.value("id", int(elements.size()));
      c.members = e.at("members").get<std::vector<int>>();
      c.provenance = e.contains("provenance") ? provenance_from_json(e.at("provenance")) : ExplicitSource{};
      elements.push_back(std::move(c));
    }
    return Cover(std::move(elements), j.at("ground_set_size").get<int>(),
                 j.contains("delta") ? read_number(j.at("delta")) : 0.0);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed cover JSON: ") + e.what());
  }
}

json to_json(const Filtration& filtration) {
  json simplices = json::array();
  for (const auto& s : filtration.simplices())
    simplices.push_back({{"vertices", s.vertices}, {"value", number(s.value)}});
  return {{"schema_version", kSchemaVersion},
          {"type", "filtration"},
          {"vertex_count", filtration.vertex_count()},
          {"simplices", simplices}};
}

Filtration filtration_from_json(const json& j) {
  try {
    std::vector<Simplex> simplices;
    for (const auto& s : j.at("simplices"))
      simplices.push_back({s.at("vertices").get<std::vector<int>>(),
                           s.contains("value") ? read_number(s.at("value")) : 0.0});
    return Filtration::from_ordered(std::move(simplices), j.value("vertex_count", -1));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed filtration JSON: ") + e.what());
  }
}

json to_json(const PersistenceDiagram& diagram) {
  json bars = json::object();
  for (const auto& [k, v] : diagram.bars) {
    json list = json::array();
    for (const auto& b : v) list.push_back({number(b.birth), number(b.death)});
    bars[std::to_string(k)] = list;
  }
  return {{"schema_version", kSchemaVersion}, {"type", "diagram"}, {"source", diagram.source}, {"bars", bars}};
}

PersistenceDiagram diagram_from_json(const json& j) {
  try {
    PersistenceDiagram d;
    d.source = j.value("source", "");
    for (const auto& [key, list] : j.at("bars").items()) {
      int k = 0;
      auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
      if (ec != std::errc{} || p != key.data() + key.size() || k < 0)
        throw InputError("malformed diagram JSON: degree key \"" + key + "\"");
      auto& bars = d.bars[k];
      for (const auto& b : list) {
        Bar bar{read_number(b.at(0)), read_number(b.at(1))};
        if (!(bar.birth <= bar.death)) throw InputError("malformed diagram JSON: bar with death before birth");
        bars.push_back(bar);
      }
    }
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed diagram JSON: ") + e.what());
  }
}

json to_json(const MapperComplex& mapper) {
  json nodes = json::array();
  for (const auto& n : mapper.nodes)
    nodes.push_back({{"element", n.element}, {"cluster", n.cluster}, {"members", n.members}});
  return {{"schema_version", kSchemaVersion}, {"type", "mapper"}, {"nodes", nodes}, {"complex", to_json(mapper.complex)}};
}

json to_json(const MVSequenceReport& report) {
  json degrees = json::array();
  for (const auto& d : report.degrees)
    degrees.push_back({{"degree", d.degree},
                       {"dim_intersection", d.dim_intersection},
                       {"dim_sum", d.dim_sum},
                       {"dim_union", d.dim_union},
                       {"rank_restriction", d.rank_restriction},
                       {"rank_inclusion", d.rank_inclusion},
                       {"rank_connecting", d.rank_connecting},
                       {"rank_connecting_in", d.rank_connecting_in},
                       {"exact_at_intersection", d.exact_at_intersection},
                       {"exact_at_sum", d.exact_at_sum},
                       {"exact_at_union", d.exact_at_union}});
  return {{"schema_version", kSchemaVersion},
          {"type", "mv-sequence"},
          {"scale", number(report.scale)},
          {"exact", report.exact()},
          {"euler", {{"u", report.euler_u}, {"v", report.euler_v}, {"intersection", report.euler_intersection}, {"union", report.euler_union}}},
          {"degrees", degrees}};
}

json to_json(const PredicateVerdict& verdict, const StabilityOptions& options) {
  json trials = json::array();
  for (const auto& t : verdict.trials) {
    json d = json::array();
    for (double x : t.distances) d.push_back(number(x));
    trials.push_back({{"trial", t.trial}, {"epsilon", number(t.epsilon)}, {"d_B", d}, {"ratio", number(t.ratio)}, {"holds", t.holds}});
  }
  return {{"schema_version", kSchemaVersion},
          {"type", "stability"},
          {"holds", verdict.holds},
          {"vacuous", verdict.vacuous},
          {"worst_distance", number(verdict.worst_distance)},
          {"worst_ratio", number(verdict.worst_ratio)},
          {"witness_trial", verdict.witness_trial ? json(*verdict.witness_trial) : json(nullptr)},
          {"options",
           {{"perturbation_scale", number(options.perturbation_scale)},
            {"trials", options.trials},
            {"K", number(options.K)},
            {"seed", options.seed},
            {"rips", {{"max_scale", number(options.rips.max_scale)}, {"max_dim", options.rips.max_dim}, {"max_degree", options.rips.max_degree}}}}},
          {"trials", trials}};
}

json to_json(const BottleneckResult& result) {
  json pairs = json::array();
  for (const auto& p : result.certificate.pairs)
    pairs.push_back({p.a == kDiagonal ? json(nullptr) : json(p.a), p.b == kDiagonal ? json(nullptr) : json(p.b)});
  return {{"schema_version", kSchemaVersion},
          {"type", "bottleneck"},
          {"degree", result.certificate.degree},
          {"distance", number(result.distance)},
          {"infinite", result.infinite},
          {"certificate", {{"pairs", pairs}, {"cost", number(result.certificate.cost)}}}};
}

json to_json(const Transcript& transcript) {
  json steps = json::array();
  for (const auto& s : transcript.steps)
    steps.push_back({{"depth", s.depth}, {"rule", s.rule}, {"target", s.target}, {"members", s.members}, {"holds", s.holds}, {"note", s.note}});
  return {{"established", transcript.established}, {"conclusion", transcript.conclusion}, {"steps", steps}};
}

json to_json(const BredonReport& r) {
  json local = json::object();
  for (const auto& [id, v] : r.local) local[std::to_string(id)] = verdict_json(v);
  json gluing = json::array();
  for (const auto& g : r.gluing) {
    json e{{"u", g.u},
           {"v", g.v},
           {"intersection", g.intersection},
           {"materialized", g.materialized},
           {"union", verdict_json(g.union_verdict)},
           {"intersection_verdict", verdict_json(g.intersection_verdict)},
           {"holds", g.holds}};
    if (g.diagram_check) e["diagram_check"] = gluing_json(*g.diagram_check);
    gluing.push_back(std::move(e));
  }
  json components = json::array();
  for (const auto& c : r.additivity.components)
    components.push_back({{"elements", c.element_ids}, {"members", c.members.size()}, {"verdict", verdict_json(c.verdict)}});
  json additivity{{"holds", r.additivity.holds}, {"degenerate", r.additivity.degenerate}, {"components", components}};
  if (r.additivity.disjoint_union) additivity["disjoint_union"] = verdict_json(*r.additivity.disjoint_union);
  if (r.additivity.diagram_report) {
    const auto& d = *r.additivity.diagram_report;
    additivity["diagram_report"] = {{"holds", d.holds},
                                    {"matches_global", d.matches_global ? json(*d.matches_global) : json(nullptr)},
                                    {"mismatched_degrees", d.mismatched_degrees}};
  }
  json induction = json::array();
  for (const auto& t : r.induction) induction.push_back(to_json(t));

  json out{{"schema_version", kSchemaVersion},
           {"type", "bredon-report"},
           {"checker", r.checker},
           {"global", r.global},
           {"status", r.status},
           {"first_failure", r.first_failure},
           {"interpretation", r.interpretation},
           {"stages", {{"local", r.local_holds}, {"gluing", r.gluing_holds}, {"additivity", r.additivity.holds}, {"induction", r.induction_holds}, {"assembly", r.assembly_holds}}},
           {"local", local},
           {"gluing", gluing},
           {"additivity", additivity},
           {"induction", induction},
           {"cover_size", r.cover_size},
           {"k_delta", number(r.k_delta)},
           {"sup_local_epsilon", number(r.sup_local_epsilon)},
           {"epsilon_x", number(r.epsilon_x)},
           {"measured_global_distance", r.measured_global_distance ? number(*r.measured_global_distance) : json(nullptr)},
           {"bound_exceeded", r.bound_exceeded},
           {"p_eval_count", r.p_eval_count},
           {"budget", number(r.budget)},
           {"within_budget", r.within_budget},
           {"seed", r.seed},
           {"warnings", r.warnings}};
  if (r.assembly) {
    json layers = json::object();
    for (const auto& [n, ok] : r.assembly->layers) layers[std::to_string(n)] = ok;
    out["assembly"] = {{"established", r.assembly->established},
                       {"layers", layers},
                       {"even_union", r.assembly->even_union},
                       {"odd_union", r.assembly->odd_union},
                       {"intersection", r.assembly->intersection},
                       {"transcript", to_json(r.assembly->transcript)}};
  }
  return out;
}

std::string mv_table(const MVSequenceReport& report) {
  std::ostringstream out;
  out << "scale " << report.scale << "\n"
      << "k  dim(U∩V)  dim(U)+dim(V)  dim(U∪V)  rk a  rk b  rk c  exact(∩,⊕,∪)\n";
  for (const auto& d : report.degrees) {
    out << std::left << std::setw(3) << d.degree << std::setw(10) << d.dim_intersection << std::setw(15)
        << d.dim_sum << std::setw(10) << d.dim_union << std::setw(6) << d.rank_restriction << std::setw(6)
        << d.rank_inclusion << std::setw(6) << d.rank_connecting << (d.exact_at_intersection ? 'y' : 'n')
        << (d.exact_at_sum ? 'y' : 'n') << (d.exact_at_union ? 'y' : 'n') << '\n';
  }
  out << "euler: chi(U∪V) = " << report.euler_union << ", chi(U) + chi(V) - chi(U∩V) = "
      << report.euler_u + report.euler_v - report.euler_intersection << '\n'
      << (report.exact() ? "exact" : "NOT exact") << '\n';
  return out.str();
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string config_digest(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

}  // namespace bredon
