#include "support.hpp"

#include "../tools/cli.hpp"
#include "bredon/cover.hpp"
#include "bredon/error.hpp"
#include "bredon/io.hpp"
#include "bredon/svg.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace bredon;
using namespace bredon::test;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bredon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("bredon-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_csv(in);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("csv reading") {
  std::istringstream plain("0,0\n1,0\n\n# comment\n0,1\n");
  const auto c = read_csv(plain);
  CHECK(c.size() == 3);
  CHECK(c.dim() == 2);
  CHECK(c.points(2, 1) == 1.0);

  std::istringstream header("x,y\n0.5,2\n");
  const auto h = read_csv(header);
  CHECK(h.size() == 1);
  CHECK(h.points(0, 0) == 0.5);

  std::istringstream labelled("1,2,a\n3,4,b\n");
  const auto l = read_csv(labelled, {.label_column = true});
  CHECK(l.dim() == 2);
  CHECK(l.labels == std::vector<std::string>{"a", "b"});

  CHECK(error_of("0,0\n1,zz\n").find("line 2") != std::string::npos);
  CHECK(error_of("0,0\n1\n").find("line 2") != std::string::npos);
  CHECK(error_of("0,0\n0,0\n1,nan\n").find("line 3") != std::string::npos);
  CHECK(error_of("0,0\n0,0\n1,inf\n").find("line 3") != std::string::npos);
}

TEST_CASE("json round trips") {
  const auto cloud = circle(12);
  const auto cover = close_under_intersections(build_ball_cover(cloud, 0.6, MaxMin{4}), 2);
  const auto back = cover_from_json(to_json(cover));
  REQUIRE(back.size() == cover.size());
  for (int i = 0; i < cover.size(); ++i) {
    CHECK(back.element(i).members == cover.element(i).members);
    CHECK(provenance_kind(back.element(i).provenance) == provenance_kind(cover.element(i).provenance));
  }
  CHECK(back.edges() == cover.edges());
  CHECK(back.delta() == cover.delta());

  const auto f = vietoris_rips(cloud, 1.2, 2);
  const auto g = filtration_from_json(to_json(f));
  CHECK(g.simplices() == f.simplices());

  const auto d = compute_persistence(f, 1);
  const auto e = diagram_from_json(to_json(d));
  CHECK(same_multiset(d, e));
  int encoded = 0;
  const auto encoded_json = to_json(d);
  for (const auto& bar : encoded_json["bars"]["0"]) encoded += bar[1] == "inf";
  CHECK(encoded == 1);

  CHECK_THROWS_AS(cover_from_json(nlohmann::json{{"type", "cover"}}), InputError);
}

TEST_CASE("config digest is order independent and value sensitive") {
  const auto a = nlohmann::json::parse(R"({"x": 1, "y": [1, 2]})");
  const auto b = nlohmann::json::parse(R"({"y": [1, 2], "x": 1})");
  const auto c = nlohmann::json::parse(R"({"y": [1, 2], "x": 2})");
  CHECK(config_digest(a) == config_digest(b));
  CHECK(config_digest(a) != config_digest(c));
}

TEST_CASE("diagram svg") {
  const auto empty = diagram_svg(PersistenceDiagram{});
  CHECK(empty.find("<svg") != std::string::npos);
  CHECK(empty.find("<circle") == std::string::npos);

  const auto one = diagram_svg(diagram({{0.0, kInfinity}}));
  CHECK(one.find("class=\"infinite\"") != std::string::npos);
  CHECK(one.find("class=\"finite\"") == std::string::npos);

  const auto dgm = compute_persistence(vietoris_rips(circle(8), 2.0, 2), 1);
  const auto svg = diagram_svg(dgm);
  CHECK(svg.find("data-degree=\"1\"") != std::string::npos);
  CHECK(svg == diagram_svg(dgm));
  CHECK_THROWS(render_diagram_svg(dgm, "/proc/no-such-dir/x.svg"));
}

TEST_CASE("cli persist and bottleneck") {
  const auto dir = scratch("persist");
  write_file(dir / "two.csv", "x,y\n0,0\n1,0\n");
  const auto r = run_cli({"--out-dir", dir.string(), "persist", "--input", (dir / "two.csv").string()});
  REQUIRE(r.code == 0);
  const auto dgm = diagram_from_json(read_json(dir / "diagram.json"));
  auto bars = dgm.degree(0);
  std::sort(bars.begin(), bars.end());
  CHECK(bars == std::vector<Bar>{{0.0, 1.0}, {0.0, kInfinity}});
  CHECK(fs::exists(dir / "diagram.svg"));
  const auto manifest = read_json(dir / "manifest.json");
  CHECK(manifest["command"] == "persist");
  CHECK(manifest["toolkit_version"] == kToolkitVersion);

  const auto d = (dir / "diagram.json").string();
  const auto b = run_cli({"--out-dir", dir.string(), "bottleneck", d, d});
  CHECK(b.code == 0);
  CHECK(b.out == "0\n");
}

TEST_CASE("cli errors") {
  CHECK(run_cli({"persist", "--no-such-flag"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
  const auto dir = scratch("errors");
  write_file(dir / "c.toml", "seed = 1\n");
  const auto toml = run_cli({"--out-dir", dir.string(), "--config", (dir / "c.toml").string(), "bredon-verify"});
  CHECK(toml.code == 2);
  CHECK(toml.err.find("TOML") != std::string::npos);
  const auto missing = run_cli({"--out-dir", dir.string(), "persist", "--input", (dir / "nope.csv").string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("error: ", 0) == 0);
}

TEST_CASE("cli bredon-verify exit codes and determinism") {
  const auto data = source_dir() / "data";
  auto strip = [](nlohmann::json m) {
    m.erase("started");
    m.erase("finished");
    m.erase("outputs");
    return m;
  };

  const auto d1 = scratch("verify-1");
  const auto d2 = scratch("verify-2");
  const auto cfg = (data / "circle_stability.json").string();
  const auto a = run_cli({"--out-dir", d1.string(), "--config", cfg, "bredon-verify"});
  const auto b = run_cli({"--out-dir", d2.string(), "--config", cfg, "bredon-verify"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(read_json(d1 / "report.json") == read_json(d2 / "report.json"));
  CHECK(strip(read_json(d1 / "manifest.json")) == strip(read_json(d2 / "manifest.json")));

  const auto d3 = scratch("verify-3");
  const auto bad = run_cli({"--out-dir", d3.string(), "--config", (data / "circle_counterexample.json").string(),
                            "bredon-verify"});
  CHECK(bad.code == 1);
  CHECK(read_json(d3 / "report.json")["global"] == false);
  CHECK(fs::exists(d3 / "manifest.json"));
}

TEST_CASE("cli mv-check and stability") {
  const auto dir = scratch("mv");
  write_file(dir / "square.csv", "0,0\n1,0\n1,1\n0,1\n");
  const auto square = (dir / "square.csv").string();
  const auto mv = run_cli({"--out-dir", dir.string(), "mv-check", "--input", square, "--max-scale", "1.0", "--u",
                           "0,1,2", "--v", "2,3,0"});
  CHECK(mv.code == 0);
  const auto st = run_cli({"--out-dir", dir.string(), "--seed", "3", "stability", "--input", square, "--scale",
                           "0.01", "--trials", "3", "--max-scale", "2"});
  CHECK(st.code == 0);
  CHECK(st.out.rfind("stability: holds", 0) == 0);
  CHECK(read_json(dir / "manifest.json")["seed"] == 3);
}
