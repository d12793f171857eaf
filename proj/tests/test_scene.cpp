#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "timelike/cli.hpp"
#include "timelike/render.hpp"
#include "timelike/scene.hpp"

using namespace timelike;
using test::vec;

namespace {

const char* kUnitBall = R"({
  "chart": {"kind": "euclidean", "dimension": 2},
  "bodies": [{"id": "B", "kind": "ball", "center": [0, 0], "radius": 1}],
  "context": {"kind": "funk", "body": "B"}
})";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::precondition;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("timelike_scene_test_" + name)).string();
}

/// Writes `text` to a file in the system temporary directory.
std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = temp_path(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

struct CliRun {
  int status;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("scene-cli") {

TEST_CASE("minimal funk scene parses to one body") {
  const Scene s = parse_scene(kUnitBall);
  CHECK(s.bodies().size() == 1);
  CHECK(s.context().is_funk());
  CHECK(s.chart().dimension == 2);
}

TEST_CASE("non-unit spherical point is a validation error") {
  const char* text = R"({
    "chart": {"kind": "spherical", "dimension": 2},
    "bodies": [{"id": "K", "kind": "cap", "center": [1, 0, 0], "radius": 0.5}],
    "context": {"kind": "funk", "body": "K"},
    "points": [{"id": "p", "coords": [0, 2, 0]}]
  })";
  CHECK(code_of([&] { parse_scene(text); }) == ErrorCode::validation);
  CHECK(message_of([&] { parse_scene(text); }).find("'p'") != std::string::npos);
}

TEST_CASE("overlapping hilbert bodies fail the disjointness check") {
  const char* text = R"({
    "chart": {"kind": "euclidean", "dimension": 2},
    "bodies": [{"id": "A", "kind": "ball", "center": [0, -1], "radius": 1},
               {"id": "B", "kind": "ball", "center": [0, 0.5], "radius": 1}],
    "context": {"kind": "hilbert", "past": "A", "future": "B"}
  })";
  CHECK(code_of([&] { parse_scene(text); }) == ErrorCode::validation);
  CHECK(message_of([&] { parse_scene(text); }).find("disjoint") != std::string::npos);
}

TEST_CASE("syntax errors report line and column") {
  const std::string text = "{\n  \"chart\": {\"kind\": \"euclidean\",, \"dimension\": 2}\n}";
  CHECK(code_of([&] { parse_scene(text); }) == ErrorCode::parse);
  CHECK(message_of([&] { parse_scene(text); }).find("line 2") != std::string::npos);
}

TEST_CASE("unknown fields and dangling ids are named") {
  const std::string extra = R"({"chart": {"kind": "euclidean", "dimension": 2},
    "bodies": [{"id": "B", "kind": "ball", "center": [0, 0], "radius": 1, "colour": 3}],
    "context": {"kind": "funk", "body": "B"}})";
  CHECK(message_of([&] { parse_scene(extra); }).find("colour") != std::string::npos);
  const std::string dangling = R"({"chart": {"kind": "euclidean", "dimension": 2},
    "bodies": [{"id": "B", "kind": "ball", "center": [0, 0], "radius": 1}],
    "context": {"kind": "funk", "body": "C"}})";
  CHECK(code_of([&] { parse_scene(dangling); }) == ErrorCode::validation);
  CHECK(message_of([&] { parse_scene(dangling); }).find("'C'") != std::string::npos);
}

TEST_CASE("serialization round trips bit for bit") {
  const char* text = R"({
    "chart": {"kind": "euclidean", "dimension": 2},
    "bodies": [{"id": "A", "kind": "hpolytope",
                "faces": [{"normal": [0.1, 1], "offset": -1}, {"normal": [-1, 0.3], "offset": 0.7000000000000001},
                          {"normal": [1, 0.2], "offset": 3}]},
               {"id": "B", "kind": "ball", "center": [0.1, 2.6], "radius": 0.123456789012345678}],
    "context": {"kind": "hilbert", "past": "A", "future": "B"},
    "points": [{"id": "p", "coords": [0.1, 0.1]}, {"id": "q", "coords": [0.12, 0.3333333333333333]}],
    "curves": [{"id": "c", "kind": "segment", "points": [[0.1, 0.1], [0.12, 0.3]], "samples": 512}]
  })";
  const Scene a = parse_scene(text);
  const std::string once = serialize_scene(a);
  const Scene b = parse_scene(once);
  CHECK(serialize_scene(b) == once);
  REQUIRE(a.body_specs().size() == b.body_specs().size());
  for (std::size_t i = 0; i < a.body_specs().size(); ++i) {
    const BodySpec &x = a.body_specs()[i], &y = b.body_specs()[i];
    CHECK(std::memcmp(&x.radius, &y.radius, sizeof(double)) == 0);
    CHECK(x.center == y.center);
    REQUIRE(x.faces.size() == y.faces.size());
    for (std::size_t j = 0; j < x.faces.size(); ++j) {
      CHECK(x.faces[j].normal == y.faces[j].normal);
      CHECK(std::memcmp(&x.faces[j].offset, &y.faces[j].offset, sizeof(double)) == 0);
    }
  }
  for (std::size_t i = 0; i < a.point_specs().size(); ++i)
    CHECK(a.point_specs()[i].coords == b.point_specs()[i].coords);
  CHECK(b.curve_specs().at(0).samples == 512);
}

TEST_CASE("coordinates parse strictly") {
  CHECK(parse_coordinates("-2,0.5") == vec({-2, 0.5}));
  CHECK(parse_coordinates(" 1e-3 , 4 ") == vec({1e-3, 4}));
  CHECK(code_of([] { parse_coordinates("1,,2"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_coordinates("1,x"); }) == ErrorCode::parse);
}

TEST_CASE("funk subcommand prints the unit-ball distance") {
  const std::string path = write_temp("ball.json", kUnitBall);
  const CliRun r = cli({"funk", "--scene", path, "--from", "-2,0", "--to", "-1.5,0"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("distance 0.69314718056\n") != std::string::npos);
  const CliRun j = cli({"funk", "--scene", path, "--from", "-2,0", "--to", "-1.5,0", "--format", "json"});
  CHECK(j.out.find("\"distance\": 0.6931471805599453") != std::string::npos);
  const CliRun c = cli({"funk", "--scene", path, "--from", "-2,0", "--to", "-1.5,0", "--format", "csv"});
  CHECK(c.out.rfind("kind,from,to,distance,variational,hit\n", 0) == 0);
}

TEST_CASE("order subcommand reports unrelated beyond the body") {
  const std::string path = write_temp("ball.json", kUnitBall);
  const CliRun r = cli({"order", "--scene", path, "--from", "-2,0", "--to", "2,0"});
  CHECK(r.status == kExitOk);
  CHECK(r.out == "unrelated\n");
  CHECK(cli({"order", "--scene", path, "--from", "-2,0", "--to", "-1.5,0"}).out == "timelike\n");
}

TEST_CASE("exit statuses follow the error class") {
  const std::string path = write_temp("ball.json", kUnitBall);
  CHECK(cli({"funk", "--scene", path, "--from", "2,0", "--to", "-1.5,0"}).status == kExitDomain);
  CHECK(cli({"funk", "--scene", path, "--from", "-2,0"}).status == kExitUsage);
  CHECK(cli({"funk", "--scene", path, "--from", "-2,0", "--to", "1,2,3"}).status == kExitUsage);
  CHECK(cli({"funk", "--scene", "missing.json", "--from", "-2,0", "--to", "0,0"}).status == kExitUsage);
  CHECK(cli({"frobnicate"}).status == kExitUsage);
  CHECK(cli({"check", "--suite", "funk"}).status == kExitUsage);
  const std::string bad = write_temp("bad.json", "{\"chart\": ");
  const CliRun r = cli({"funk", "--scene", bad, "--from", "-2,0", "--to", "0,0"});
  CHECK(r.status == kExitUsage);
  CHECK(r.err.find("line") != std::string::npos);
}

TEST_CASE("check all with seed 7 passes and keeps wall time off stdout") {
  const CliRun r = cli({"check", "--suite", "all", "--seed", "7", "--cases", "1000"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("result PASS") != std::string::npos);
  CHECK(r.out.find("wall time") == std::string::npos);
  CHECK(r.err.find("wall time") != std::string::npos);
}

TEST_CASE("render draws the dilated arc through (-1.5, 0)") {
  const Scene s = parse_scene(kUnitBall);
  RenderOptions o;
  o.apex = vec({-2, 0});
  o.radii = {std::log(2.0)};
  const std::string svg = render_svg(s, o);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("class=\"future-sphere\"") != std::string::npos);
  CHECK(svg.find("-1.500000,0.000000") != std::string::npos);
  CHECK(render_svg(s, o) == svg);
}

TEST_CASE("render without overlays draws bodies only") {
  const std::string svg = render_svg(parse_scene(kUnitBall), RenderOptions{});
  CHECK(svg.find("id=\"body-B\"") != std::string::npos);
  CHECK(svg.find("future-sphere") == std::string::npos);
  CHECK(svg.find("class=\"cone\"") == std::string::npos);
}

TEST_CASE("render of a spherical scene uses the gnomonic image") {
  const char* text = R"({
    "chart": {"kind": "spherical", "dimension": 2},
    "bodies": [{"id": "K", "kind": "cap", "center": [-1, 0, 0], "radius": 0.7853981633974483}],
    "context": {"kind": "projective_desitter", "past": "K"}
  })";
  const Scene s = parse_scene(text);
  RenderOptions o;
  o.apex = vec({std::cos(1.2), std::sin(1.2), 0});
  o.radii = {0.3};
  o.cones = true;
  o.null_directions = true;
  const std::string svg = render_svg(s, o);
  CHECK(svg.find("future-sphere") != std::string::npos);
  CHECK(svg.find("null") != std::string::npos);
  CHECK(svg == render_svg(s, o));
}

TEST_CASE("render of a 3-dimensional scene is unsupported") {
  const char* text = R"({
    "chart": {"kind": "euclidean", "dimension": 3},
    "bodies": [{"id": "B", "kind": "ball", "center": [0, 0, 0], "radius": 1}],
    "context": {"kind": "funk", "body": "B"}
  })";
  const Scene s = parse_scene(text);
  CHECK(code_of([&] { render_svg(s, RenderOptions{}); }) == ErrorCode::unsupported);
  const std::string path = write_temp("ball3.json", text);
  CHECK(cli({"render", "--scene", path}).status == kExitDomain);
}

TEST_CASE("length subcommand integrates a scene curve") {
  const std::string text = R"({"chart": {"kind": "euclidean", "dimension": 2},
    "bodies": [{"id": "B", "kind": "ball", "center": [0, 0], "radius": 1}],
    "context": {"kind": "funk", "body": "B"},
    "curves": [{"id": "c", "kind": "segment", "points": [[-3, 0], [-1.5, 0]]},
               {"id": "back", "kind": "segment", "points": [[-1.5, 0], [-3, 0]]}]})";
  const std::string path = write_temp("curves.json", text);
  const CliRun r = cli({"length", "--scene", path, "--curve-id", "c"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("length 1.3862943611") != std::string::npos);
  CHECK(cli({"length", "--scene", path, "--curve-id", "back"}).status == kExitDomain);
}

TEST_CASE("desitter-check reports the factor two") {
  const CliRun r = cli({"desitter-check", "--seed", "3", "--cases", "200"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("status PASS") != std::string::npos);
  CHECK(r.out.find("inconsistent") != std::string::npos);
}

TEST_CASE("--out writes the record to a file") {
  const std::string path = write_temp("ball.json", kUnitBall);
  const std::string target = temp_path("out.txt");
  const CliRun r = cli({"order", "--scene", path, "--from", "-2,0", "--to", "2,0", "--out", target});
  CHECK(r.status == kExitOk);
  CHECK(r.out.empty());
  CHECK(read_file(target) == "unrelated\n");
}

}  // TEST_SUITE
