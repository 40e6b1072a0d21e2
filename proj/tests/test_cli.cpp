#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "imcf/cli.hpp"
#include "imcf/errors.hpp"
#include "imcf/io.hpp"

namespace fs = std::filesystem;
using imcf::ConfigError;
using json = nlohmann::json;

namespace {

std::string bin() {
  const char* b = std::getenv("IMCFLAB_BIN");
  return b ? b : "imcflab";
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("imcflab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

int run(const std::string& args) {
  const int rc = std::system((bin() + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string field_of(const json& doc) {
  try {
    imcf::cli::parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("parse_config defaults and validation") {
  const auto c = imcf::cli::parse_config({{"command", "flow"}, {"metric", "euclidean"}});
  CHECK(c.samples == 512);
  CHECK(c.format == "both");
  CHECK(c.out == "out");
  CHECK_FALSE(c.s0.has_value());

  const auto s = imcf::cli::parse_config({{"command", "solve-reg"}, {"metric", "euclidean"}});
  REQUIRE(s.epsilon.size() == 1);
  CHECK(s.epsilon[0] == 1e-2);

  CHECK(field_of({{"command", "solve-reg"}, {"metric", "euclidean"}, {"epsilon", 0.0}}) == "epsilon");
  CHECK(field_of({{"command", "flow"}, {"metric", "euclidean"}, {"colour", 1}}) == "colour");
  CHECK(field_of({{"command", "dance"}}) == "command");
  CHECK(field_of({{"command", "flow"}, {"metric", "euclidean"}, {"m", {1, 2}}}) == "m");
  CHECK(field_of({{"command", "bound"}, {"metric", "euclidean"}, {"v_grid", "1:0.5:3"}}) == "v_grid");
  CHECK(field_of({{"command", "flow"}}) == "metric");
}

TEST_CASE("metric documents") {
  CHECK(imcf::io::metric_from_json({{"preset", "schwarzschild"}, {"params", {{"m", 2.0}}}}).s_min() == 4.0);
  try {
    imcf::io::metric_from_json(
        {{"preset", "euclidean"}, {"tabulated", {{"s", {0, 1}}, {"A", {1, 1}}, {"R", {0, 1}}}}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("exactly one of") != std::string::npos);
  }
  json tab = {{"tabulated", {{"s", json::array()}, {"A", json::array()}, {"R", json::array()}}}};
  for (int i = 0; i < 16; ++i) {
    tab["tabulated"]["s"].push_back(i);
    tab["tabulated"]["A"].push_back(1.0);
    tab["tabulated"]["R"].push_back(i);
  }
  CHECK(imcf::io::metric_from_json(tab).R(3.5) == doctest::Approx(3.5));
}

TEST_CASE("fnv1a is stable") {
  CHECK(imcf::io::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(imcf::io::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("flow command writes the profile and jumps") {
  const auto dir = scratch("flow");
  CHECK(run("flow --metric '{\"preset\":\"euclidean\"}' --s0 0.01 --t-max 12 --samples 512 --out " + dir.string()) == 0);
  const std::string csv = slurp(dir / "profile.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 513);
  CHECK(csv.rfind("t,s,B,m,v,H\n", 0) == 0);
  CHECK(imcf::io::read_json(dir / "jumps.json").empty());
  const auto summary = imcf::io::read_json(dir / "summary.json");
  CHECK(summary["passed"] == true);
}

TEST_CASE("exit statuses") {
  const auto dir = scratch("errors");
  CHECK(run("solve-reg --metric euclidean --eps 0 --out " + dir.string()) == 2);
  CHECK(imcf::io::read_json(dir / "summary.json")["error"]["field"] == "epsilon");
  CHECK(run("flow --metric nowhere --out " + dir.string()) == 2);
  CHECK(run("flow --metric euclidean --no-such-flag 1 --out " + dir.string()) == 2);
  // Start coordinate inside the domain but the volume grid beyond it: computation failure.
  CHECK(run("bound --metric round-3-sphere-cap --v-grid 1e6,2e6 --out " + dir.string()) == 1);
  CHECK(imcf::io::read_json(dir / "summary.json")["status"] == "computation-error");
}

TEST_CASE("bound command and report aggregation") {
  const auto root = scratch("report");
  const auto bdir = root / "bound";
  CHECK(run("bound --metric cored-schwarzschild --m 1 --b 1 --format both --out " + bdir.string()) == 0);
  const std::string csv = slurp(bdir / "bound.csv");
  CHECK(csv.rfind("v,B,rhs,classical,slack,verdict\n", 0) == 0);
  CHECK(csv.find(",fail") == std::string::npos);
  CHECK(imcf::io::read_json(bdir / "bound.json").size() == 16);

  const auto rdir = root / "summary";
  CHECK(run("report --from " + bdir.string() + " --out " + rdir.string()) == 0);
  const auto rep = imcf::io::read_json(rdir / "summary.json");
  CHECK(rep["passed"] == true);
  CHECK(rep["checks"].size() == 1);

  // A failing source makes the report fail without recomputation.
  auto s = imcf::io::read_json(bdir / "summary.json");
  s["checks"]["bound"] = false;
  s["passed"] = false;
  imcf::io::write_json(bdir / "summary.json", s);
  CHECK(run("report --from " + bdir.string() + " --out " + rdir.string()) == 1);
}

TEST_CASE("config file with flag overrides") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  imcf::io::write_json(dir / "run.json", {{"metric", {{"preset", "euclidean"}}}, {"samples", 16}, {"t_max", 2.0}});
  CHECK(run("flow --config " + (dir / "run.json").string() + " --samples 32 --format csv --out " +
            (dir / "o").string()) == 0);
  const std::string csv = slurp(dir / "o" / "profile.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 33);
  CHECK_FALSE(fs::exists(dir / "o" / "profile.json"));
}
