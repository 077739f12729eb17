#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quadrapt/cli.hpp"
#include "quadrapt/io.hpp"

using namespace quadrapt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("classify hyperbolic example") {
  const Run r = run({"classify", "--region", "hyperbolic", "--abcd", "1,2,-4,12"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schemaVersion"] == 1);
  CHECK(j["index"] == 1);
  CHECK(j["roots"]["count"] == 0);
}

TEST_CASE("classify elliptic center") {
  const Run r = run({"classify", "--region", "elliptic", "--abcd", "0,1/2,-1/2,0"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["portrait"] == "D3");
  CHECK(j["index"] == "-1/3");
}

TEST_CASE("classify rejects a non-simple model") {
  CHECK(run({"classify", "--region", "hyperbolic", "--abcd", "0,0,0,0"}).code == 2);
  CHECK(run({"classify", "--region", "parabolic", "--abcd", "1,0,0,1"}).code == 2);
  CHECK(run({"classify", "--region", "elliptic", "--abcd", "1,0,0"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("portrait emits marked svg") {
  const Run r = run({"portrait", "--region", "hyperbolic", "--abcd", "-1,-5/2,5/2,1", "--format", "svg",
                     "--density", "4"});
  REQUIRE(r.code == 0);
  CHECK(count(r.out, "class=\"saddle\"") == 4);
  CHECK(count(r.out, "class=\"node\"") == 4);
  const Run h3 = run({"portrait", "--region", "hyperbolic", "--abcd", "-1,-1/2,1/2,1", "--format", "svg",
                      "--density", "4"});
  CHECK(count(h3.out, "class=\"saddle\"") == 4);
}

TEST_CASE("portrait with zero-area box is a usage error") {
  CHECK(run({"portrait", "--region", "hyperbolic", "--abcd", "1,2,-4,12", "--bbox", "0,0,0,1"}).code == 2);
}

TEST_CASE("portrait writes svg and csv next to a prefix") {
  const auto dir = std::filesystem::temp_directory_path() / "quadrapt_cli_test";
  std::filesystem::create_directories(dir);
  const auto prefix = dir / "hyp3";
  const Run r = run({"portrait", "--region", "hyperbolic", "--abcd", "-1,-1/2,1/2,1", "--density", "3", "--out",
                     prefix.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(prefix.string() + ".svg").find("<svg") != std::string::npos);
  CHECK(slurp(prefix.string() + ".csv").rfind("leafId,branch,x,y", 0) == 0);
  CHECK(Json::parse(r.out)["portraitIndex"] == "-1");
  std::filesystem::remove_all(dir);
}

TEST_CASE("global on the rotation surface passes") {
  const Run t = run({"global", "--catalog", "rotation", "--lambda", "0.2", "--grid", "32"});
  CHECK(t.code == 0);
  CHECK(t.out.find("PASS") != std::string::npos);
  const Run j = run({"global", "--catalog", "rotation", "--lambda", "0.2", "--grid", "32", "--format", "json"});
  REQUIRE(j.code == 0);
  const Json report = Json::parse(j.out);
  CHECK(report["points"].size() == 2);
  CHECK(report["pass"] == true);
}

TEST_CASE("global on a quadric is informational") {
  const Run r = run({"global", "--catalog", "sphere", "--grid", "32"});
  CHECK(r.code == 0);
  CHECK(r.out.find("totally quadratic") != std::string::npos);
}

TEST_CASE("global reads a json surface spec") {
  const auto path = std::filesystem::temp_directory_path() / "quadrapt_spec_test.json";
  {
    std::ofstream f(path);
    f << R"({"kind":"implicit","terms":[[2,0,0,1],[0,2,0,1],[0,0,2,1],[0,0,0,-1]],"chiM":2})";
  }
  const Run r = run({"global", "--spec", path.string(), "--grid", "32"});
  CHECK(r.code == 0);
  CHECK(r.out.find("totally quadratic") != std::string::npos);
  std::filesystem::remove(path);
  CHECK(run({"global", "--spec", path.string()}).code == 2);
  CHECK(run({"global", "--catalog", "torus"}).code == 2);
}

TEST_CASE("surface spec parsing") {
  const CatalogEntry g = parse_surface_spec(
      Json::parse(R"({"kind":"graph","coeffs":[[1,1,1.0],[4,0,1.0]],"domain":{"disc":[0,0,0.5]},"chiH":1})"));
  CHECK(g.chart.has_value());
  CHECK(g.chiH == 1);
  const CatalogEntry c = parse_surface_spec(Json::parse(R"({"kind":"catalog","name":"rotation","params":{"lambda_rot":0.1}})"));
  CHECK(c.params.at("lambda_rot") == 0.1);
  CHECK_THROWS_AS(parse_surface_spec(Json::parse(R"({"kind":"mesh"})")), Error);
}

TEST_CASE("jet command") {
  const Run r = run({"jet", "--catalog", "fold", "--point", "1,1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schemaVersion"] == 1);
}

TEST_CASE("identical runs give byte-identical output") {
  const std::vector<std::vector<std::string>> cmds{
      {"classify", "--region", "elliptic", "--abcd", "0.3,0.1,-0.7,0.2"},
      {"portrait", "--region", "hyperbolic", "--abcd", "-1,-5/2,5/2,1", "--format", "csv", "--density", "4"},
      {"portrait", "--region", "elliptic", "--abcd", "0,1/2,-1/2,0", "--format", "json", "--density", "3"},
      {"global", "--catalog", "rotation", "--grid", "32", "--format", "json"},
      {"loewner", "--trials", "50", "--max-degree", "6", "--seed", "7"},
  };
  for (const auto& c : cmds) {
    const Run a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("verify runs a subset of the suite") {
  const Run r = run({"verify", "--only", "1,3"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "PASS") == 2);
}
