#include "cli.hpp"

#include "bredon/checkers.hpp"
#include "bredon/complex.hpp"
#include "bredon/cover.hpp"
#include "bredon/diagram_metrics.hpp"
#include "bredon/error.hpp"
#include "bredon/io.hpp"
#include "bredon/mapper.hpp"
#include "bredon/mayer_vietoris.hpp"
#include "bredon/persistence.hpp"
#include "bredon/protocol.hpp"
#include "bredon/svg.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace bredon {

namespace {

/// A verification ran to completion and did not pass.
struct VerificationFailed {};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("bredon", sink);
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("BREDON_LOG")) log->set_level(spdlog::level::from_str(env));
  return log;
}

/// Shared flags plus what each run records in its manifest.
struct Run {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> seed_flag;
  std::string config_path;
  std::string out_dir = ".";
  std::string input;
  json options = json::object();
  std::vector<std::string> outputs;
  std::string started;
  std::ostream* out = nullptr;
  std::shared_ptr<spdlog::logger> log;

  fs::path output(const std::string& name) {
    const auto p = fs::path(out_dir) / name;
    outputs.push_back(p.string());
    return p;
  }

  void write_manifest(const std::string& command) {
    json m{{"schema_version", kSchemaVersion},
           {"type", "manifest"},
           {"command", command},
           {"input", input},
           {"config_digest", config_digest(options)},
           {"seed", seed},
           {"toolkit_version", kToolkitVersion},
           {"started", started},
           {"finished", utc_now()},
           {"outputs", outputs}};
    write_json(fs::path(out_dir) / "manifest.json", m);
  }
};

json load_config(const std::string& path) {
  const fs::path p(path);
  if (p.extension() == ".toml")
    throw InputError("TOML configs are not supported; convert " + path + " to JSON");
  return read_json(p);
}

fs::path resolve(const fs::path& base, const std::string& rel) {
  const fs::path p(rel);
  return p.is_absolute() ? p : base / p;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("invalid index '" + item + "' in list \"" + text + "\"");
    }
  }
  return out;
}

std::vector<double> coordinate(const PointCloud& cloud, int k) {
  if (k < 0 || k >= cloud.dim())
    throw InputError("coordinate " + std::to_string(k) + " out of range for dimension " +
                     std::to_string(cloud.dim()));
  std::vector<double> f(std::size_t(cloud.size()));
  for (int i = 0; i < cloud.size(); ++i) f[std::size_t(i)] = cloud.points(i, k);
  return f;
}

std::vector<int> all_indices(const PointCloud& cloud) {
  std::vector<int> v(std::size_t(cloud.size()));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// ---- config-driven construction ------------------------------------------

Cover cover_from_config(const json& c, const PointCloud& cloud, const fs::path& base) {
  const auto type = c.value("type", "ball");
  Cover cover;
  if (type == "ball") {
    LandmarkStrategy landmarks = AllPoints{};
    if (c.contains("landmarks")) {
      const auto& l = c.at("landmarks");
      const auto kind = l.value("type", "all");
      if (kind == "maxmin")
        landmarks = MaxMin{l.at("k").get<int>()};
      else if (kind == "grid")
        landmarks = GridLandmarks{};
      else if (kind == "explicit")
        landmarks = ExplicitLandmarks{l.at("indices").get<std::vector<int>>()};
      else if (kind != "all")
        throw InputError("unknown landmark strategy \"" + kind + "\"");
    }
    cover = build_ball_cover(cloud, c.at("radius").get<double>(), landmarks);
  } else if (type == "grid") {
    cover = build_grid_cover(cloud, coordinate(cloud, c.value("coordinate", 0)),
                             c.at("resolution").get<int>(), c.at("gain").get<double>());
  } else if (type == "file") {
    cover = cover_from_json(read_json(resolve(base, c.at("path").get<std::string>())));
  } else {
    throw InputError("unknown cover type \"" + type + "\"");
  }
  if (const int depth = c.value("close_depth", 0); depth >= 2) cover = close_under_intersections(cover, depth);
  return cover;
}

RipsParams rips_from_config(const json& c) {
  RipsParams r;
  r.max_scale = c.value("max_scale", r.max_scale);
  r.max_dim = c.value("max_dim", r.max_dim);
  r.max_degree = c.value("max_degree", r.max_degree);
  return r;
}

StabilityOptions stability_from_config(const json& c, std::uint64_t seed, int workers) {
  StabilityOptions o;
  o.perturbation_scale = c.value("perturbation_scale", o.perturbation_scale);
  o.trials = c.value("trials", o.trials);
  o.K = c.value("K", o.K);
  if (c.contains("rips")) o.rips = rips_from_config(c.at("rips"));
  o.seed = seed;
  o.workers = workers;
  return o;
}

std::unique_ptr<PropertyChecker> checker_from_config(const json& c, const PointCloud& cloud,
                                                     std::uint64_t seed, int workers) {
  const auto type = c.at("type").get<std::string>();
  if (type == "trivial") return std::make_unique<TrivialChecker>();
  if (type == "connectivity") return std::make_unique<ConnectivityChecker>(cloud, c.at("scale").get<double>());
  if (type == "acyclicity")
    return std::make_unique<AcyclicityChecker>(cloud, c.at("scale").get<double>(), c.value("max_degree", 1));
  if (type == "stability")
    return std::make_unique<StabilityChecker>(cloud, stability_from_config(c, seed, workers));
  throw InputError("unknown checker \"" + type + "\"");
}

std::vector<double> proper_from_config(const json& c, const PointCloud& cloud, const fs::path& base) {
  const auto type = c.at("type").get<std::string>();
  if (type == "coordinate") return coordinate(cloud, c.value("k", 0));
  if (type == "norm") {
    std::vector<double> f(std::size_t(cloud.size()));
    for (int i = 0; i < cloud.size(); ++i) f[std::size_t(i)] = cloud.points.row(i).norm();
    return f;
  }
  if (type == "explicit") {
    std::vector<double> f;
    if (c.contains("values")) {
      f = c.at("values").get<std::vector<double>>();
    } else {
      const auto col = read_csv(resolve(base, c.at("file").get<std::string>()));
      if (col.dim() != 1) throw InputError("proper-function file must have one column");
      f = coordinate(col, 0);
    }
    if (int(f.size()) != cloud.size())
      throw InputError("proper function has " + std::to_string(f.size()) + " values for " +
                       std::to_string(cloud.size()) + " points");
    return f;
  }
  throw InputError("unknown proper function \"" + type + "\"");
}

// ---- subcommands -----------------------------------------------------------

struct CoverArgs {
  std::string input;
  double radius = 0.0;
  std::string landmarks = "all";
  int k = 1;
  std::string indices;
  int resolution = 0;
  double gain = 0.5;
  int coordinate = 0;
  int close_depth = 0;
};

void run_cover(Run& run, const CoverArgs& a) {
  const auto cloud = read_csv(a.input);
  json c{{"close_depth", a.close_depth}};
  if (a.resolution > 0) {
    c.update({{"type", "grid"}, {"resolution", a.resolution}, {"gain", a.gain}, {"coordinate", a.coordinate}});
  } else {
    json l{{"type", a.landmarks}, {"k", a.k}};
    if (!a.indices.empty()) l["indices"] = parse_index_list(a.indices);
    c.update({{"type", "ball"}, {"radius", a.radius}, {"landmarks", l}});
  }
  run.options = c;
  const auto cover = cover_from_config(c, cloud, ".");
  write_json(run.output("cover.json"), to_json(cover));
  *run.out << "cover: " << cover.size() << " elements, " << cover.edges().size() << " edges, delta "
           << cover.delta() << (is_delta_good(cover, cloud) ? " (delta-good)" : " (not delta-good)") << '\n';
}

struct RipsArgs {
  std::string input;
  std::string filtration;
  double max_scale = 1.0;
  int max_dim = 2;
  int max_degree = 1;
};

Filtration rips_input(const RipsArgs& a) {
  if (!a.filtration.empty()) return filtration_from_json(read_json(a.filtration));
  if (a.input.empty()) throw InputError("either --input or --filtration is required");
  return vietoris_rips(read_csv(a.input), a.max_scale, a.max_dim);
}

void run_rips(Run& run, const RipsArgs& a) {
  run.options = {{"max_scale", a.max_scale}, {"max_dim", a.max_dim}};
  const auto f = vietoris_rips(read_csv(a.input), a.max_scale, a.max_dim);
  write_json(run.output("filtration.json"), to_json(f));
  *run.out << "rips: " << f.size() << " simplices up to dimension " << f.max_dim() << '\n';
}

void run_persist(Run& run, const RipsArgs& a) {
  run.options = {{"max_scale", a.max_scale}, {"max_dim", a.max_dim}, {"max_degree", a.max_degree},
                 {"filtration", !a.filtration.empty()}};
  auto dgm = compute_persistence(rips_input(a), a.max_degree);
  dgm.source = run.input;
  const auto j = to_json(dgm);
  write_json(run.output("diagram.json"), j);
  render_diagram_svg(dgm, run.output("diagram.svg"));
  *run.out << j.dump() << '\n';
}

void run_bottleneck(Run& run, const std::string& a_path, const std::string& b_path, int degree) {
  run.input = a_path + "," + b_path;
  run.options = {{"degree", degree}};
  const auto a = diagram_from_json(read_json(a_path));
  const auto b = diagram_from_json(read_json(b_path));
  json results = json::array();
  double d = 0.0;
  const int top = std::max(a.max_degree(), b.max_degree());
  for (int k = degree < 0 ? 0 : degree; k <= (degree < 0 ? top : degree); ++k) {
    const auto r = bottleneck_distance(a, b, k);
    d = std::max(d, r.distance);
    results.push_back(to_json(r));
  }
  write_json(run.output("bottleneck.json"), {{"schema_version", kSchemaVersion},
                                             {"type", "bottleneck"},
                                             {"distance", d == kInfinity ? json("inf") : json(d)},
                                             {"degrees", results}});
  if (d == kInfinity)
    *run.out << "inf\n";
  else
    *run.out << std::setprecision(17) << d << '\n';
}

struct MapperArgs {
  std::string input;
  int coordinate = 0;
  int resolution = 4;
  double gain = 0.5;
  double cluster_scale = 0.5;
  int max_dim = 2;
};

void run_mapper(Run& run, const MapperArgs& a) {
  run.options = {{"coordinate", a.coordinate}, {"resolution", a.resolution}, {"gain", a.gain},
                 {"cluster_scale", a.cluster_scale}, {"max_dim", a.max_dim}};
  const auto cloud = read_csv(a.input);
  const auto m = mapper(cloud, coordinate(cloud, a.coordinate), a.resolution, a.gain, a.cluster_scale, a.max_dim);
  write_json(run.output("mapper.json"), to_json(m));
  const auto betti = betti_numbers(m.complex, 0.0, 1);
  *run.out << "mapper: " << m.nodes.size() << " nodes, betti (" << betti[0] << "," << betti[1] << ")\n";
}

struct MvArgs {
  RipsArgs rips;
  std::string u, v;
  double scale = kInfinity;
};

void run_mv(Run& run, const MvArgs& a) {
  run.options = {{"max_scale", a.rips.max_scale}, {"max_dim", a.rips.max_dim}, {"max_degree", a.rips.max_degree},
                 {"u", a.u}, {"v", a.v}, {"scale", a.scale == kInfinity ? json("inf") : json(a.scale)}};
  const auto f = rips_input(a.rips);
  const auto report = mv_exactness(f, parse_index_list(a.u), parse_index_list(a.v), a.scale, a.rips.max_degree);
  write_json(run.output("mv.json"), to_json(report));
  *run.out << mv_table(report);
  if (!report.exact()) throw VerificationFailed{};
}

void run_stability(Run& run, const std::string& input, StabilityOptions o, const std::string& subset) {
  run.options = {{"perturbation_scale", o.perturbation_scale}, {"trials", o.trials}, {"K", o.K},
                 {"rips", {{"max_scale", o.rips.max_scale}, {"max_dim", o.rips.max_dim}, {"max_degree", o.rips.max_degree}}},
                 {"subset", subset}};
  const auto cloud = read_csv(input);
  const auto ids = subset.empty() ? all_indices(cloud) : parse_index_list(subset);
  o.seed = run.seed;
  const auto v = stability_predicate(cloud, ids, o);
  write_json(run.output("stability.json"), to_json(v, o));
  *run.out << "stability: " << (v.holds ? "holds" : "fails") << ", worst d_B " << v.worst_distance
           << ", worst ratio " << v.worst_ratio << " over " << v.trials.size() << " trials\n";
  if (!v.holds) throw VerificationFailed{};
}

void run_verify(Run& run, int workers) {
  if (run.config_path.empty()) throw InputError("bredon-verify needs --config");
  const auto config = load_config(run.config_path);
  run.options = config;
  const auto base = fs::path(run.config_path).parent_path();
  try {
    if (!run.seed_flag) run.seed = config.value("seed", std::uint64_t{0});
    const auto input = resolve(base, config.at("input").get<std::string>());
    run.input = input.string();
    const auto cloud = read_csv(input);
    const auto cover = cover_from_config(config.at("cover"), cloud, base);
    const auto checker = checker_from_config(config.at("checker"), cloud, run.seed, workers);

    ProtocolConfig pc;
    pc.k_delta = config.value("k_delta", pc.k_delta);
    pc.budget_c = config.value("budget_c", pc.budget_c);
    pc.verify_inferences = config.value("verify_inferences", pc.verify_inferences);
    pc.seed = run.seed;
    pc.workers = workers;
    if (config.contains("proper_function"))
      pc.proper_function = proper_from_config(config.at("proper_function"), cloud, base);

    run.log->info("cover: {} elements, checker: {}", cover.size(), checker->description());
    const auto report = run_protocol(cloud, cover, *checker, pc);
    for (const auto& w : report.warnings) run.log->warn("{}", w);
    write_json(run.output("report.json"), to_json(report));
    write_text(run.output("report.txt"), report.to_text());
    *run.out << report.to_text();
    if (!report.global) throw VerificationFailed{};
  } catch (const json::exception& e) {
    throw InputError(run.config_path + ": " + e.what());
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Run run;
  run.out = &out;
  run.log = make_logger(err);
  run.started = utc_now();

  CLI::App app{"Local-to-global verification of topological properties on point clouds"};
  app.name("bredon");
  app.require_subcommand(1);
  app.add_option("--seed", run.seed_flag, "root random seed");
  app.add_option("--config", run.config_path, "JSON configuration file");
  app.add_option("--out-dir", run.out_dir, "directory for outputs and the run manifest");
  int workers = 1;
  app.add_option("--workers", workers, "worker threads for independent checks")->check(CLI::PositiveNumber);

  CoverArgs cover_args;
  auto* cover = app.add_subcommand("cover", "build a cover and export it");
  cover->add_option("--input", cover_args.input, "point CSV")->required();
  cover->add_option("--radius", cover_args.radius, "ball radius");
  cover->add_option("--landmarks", cover_args.landmarks, "all | maxmin | grid | explicit");
  cover->add_option("--k", cover_args.k, "maxmin landmark count");
  cover->add_option("--indices", cover_args.indices, "explicit landmark indices, comma separated");
  cover->add_option("--resolution", cover_args.resolution, "grid cover: number of windows");
  cover->add_option("--gain", cover_args.gain, "grid cover: overlap gain in (0,1)");
  cover->add_option("--coordinate", cover_args.coordinate, "grid cover: filter coordinate");
  cover->add_option("--close-depth", cover_args.close_depth, "close under intersections to this depth");

  RipsArgs rips_args;
  auto add_rips = [&](CLI::App* sub, bool allow_filtration) {
    sub->add_option("--input", rips_args.input, "point CSV");
    if (allow_filtration) sub->add_option("--filtration", rips_args.filtration, "filtration JSON instead of points");
    sub->add_option("--max-scale", rips_args.max_scale, "largest Rips scale");
    sub->add_option("--max-dim", rips_args.max_dim, "largest simplex dimension");
    sub->add_option("--max-degree", rips_args.max_degree, "largest homology degree");
  };
  auto* rips = app.add_subcommand("rips", "build a Vietoris-Rips filtration");
  add_rips(rips, false);
  rips->get_option("--input")->required();
  auto* persist = app.add_subcommand("persist", "compute a persistence diagram and plot it");
  add_rips(persist, true);

  std::string dgm_a, dgm_b;
  int degree = -1;
  auto* bottleneck = app.add_subcommand("bottleneck", "bottleneck distance of two diagram files");
  bottleneck->add_option("a", dgm_a, "diagram JSON")->required();
  bottleneck->add_option("b", dgm_b, "diagram JSON")->required();
  bottleneck->add_option("--degree", degree, "single degree (default: all)");

  MapperArgs mapper_args;
  auto* mapper_cmd = app.add_subcommand("mapper", "mapper complex of a coordinate filter");
  mapper_cmd->add_option("--input", mapper_args.input, "point CSV")->required();
  mapper_cmd->add_option("--coordinate", mapper_args.coordinate, "filter coordinate");
  mapper_cmd->add_option("--resolution", mapper_args.resolution, "number of windows");
  mapper_cmd->add_option("--gain", mapper_args.gain, "overlap gain in (0,1)");
  mapper_cmd->add_option("--cluster-scale", mapper_args.cluster_scale, "single-linkage scale");
  mapper_cmd->add_option("--max-dim", mapper_args.max_dim, "nerve dimension");

  MvArgs mv_args;
  auto* mv = app.add_subcommand("mv-check", "Mayer-Vietoris exactness for a split u, v");
  mv->add_option("--input", mv_args.rips.input, "point CSV");
  mv->add_option("--filtration", mv_args.rips.filtration, "filtration JSON instead of points");
  mv->add_option("--max-scale", mv_args.rips.max_scale, "largest Rips scale");
  mv->add_option("--max-dim", mv_args.rips.max_dim, "largest simplex dimension");
  mv->add_option("--max-degree", mv_args.rips.max_degree, "largest homology degree");
  mv->add_option("--u", mv_args.u, "vertex ids of u, comma separated")->required();
  mv->add_option("--v", mv_args.v, "vertex ids of v, comma separated")->required();
  mv->add_option("--scale", mv_args.scale, "evaluate the sublevel complex at this scale");

  auto* verify = app.add_subcommand("bredon-verify", "run the full verification protocol from --config");

  std::string stab_input, stab_subset;
  StabilityOptions stab;
  auto* stability = app.add_subcommand("stability", "empirical diagram stability under perturbation");
  stability->add_option("--input", stab_input, "point CSV")->required();
  stability->add_option("--scale", stab.perturbation_scale, "perturbation radius");
  stability->add_option("--trials", stab.trials, "number of perturbed copies");
  stability->add_option("--K", stab.K, "stability constant");
  stability->add_option("--max-scale", stab.rips.max_scale, "largest Rips scale");
  stability->add_option("--max-dim", stab.rips.max_dim, "largest simplex dimension");
  stability->add_option("--max-degree", stab.rips.max_degree, "largest homology degree");
  stability->add_option("--subset", stab_subset, "point ids, comma separated (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (run.seed_flag) run.seed = *run.seed_flag;
  stab.workers = workers;
  std::string command;
  try {
    if (!run.config_path.empty() && !verify->parsed()) {
      // Other subcommands read only the seed from a config file.
      const auto c = load_config(run.config_path);
      if (!run.seed_flag) run.seed = c.value("seed", run.seed);
    }
    if (cover->parsed()) {
      command = "cover";
      run.input = cover_args.input;
      run_cover(run, cover_args);
    } else if (rips->parsed()) {
      command = "rips";
      run.input = rips_args.input;
      run_rips(run, rips_args);
    } else if (persist->parsed()) {
      command = "persist";
      run.input = rips_args.filtration.empty() ? rips_args.input : rips_args.filtration;
      run_persist(run, rips_args);
    } else if (bottleneck->parsed()) {
      command = "bottleneck";
      run_bottleneck(run, dgm_a, dgm_b, degree);
    } else if (mapper_cmd->parsed()) {
      command = "mapper";
      run.input = mapper_args.input;
      run_mapper(run, mapper_args);
    } else if (mv->parsed()) {
      command = "mv-check";
      run.input = mv_args.rips.filtration.empty() ? mv_args.rips.input : mv_args.rips.filtration;
      run_mv(run, mv_args);
    } else if (verify->parsed()) {
      command = "bredon-verify";
      run_verify(run, workers);
    } else if (stability->parsed()) {
      command = "stability";
      run.input = stab_input;
      run_stability(run, stab_input, stab, stab_subset);
    }
    run.write_manifest(command);
    return 0;
  } catch (const VerificationFailed&) {
    run.write_manifest(command);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace bredon
