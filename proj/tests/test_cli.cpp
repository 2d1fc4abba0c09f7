#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string quoted_fixture(const std::string& name) {
  return "\"" + testutil::fixture_path(name) + "\"";
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = (fs::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("dispersion subcommand output") {
  auto text = testutil::run_cli("dispersion " + quoted_fixture("hexagonal.json"));
  CHECK(text.code == 0);
  CHECK(text.out.find("cycle covers: 13") != std::string::npos);
  CHECK(text.out.find("terms: 9") != std::string::npos);
  CHECK(text.out.find("Phi = lambda^2") != std::string::npos);

  auto as_json = testutil::run_cli("dispersion " + quoted_fixture("hexagonal.json") + " --json");
  REQUIRE(as_json.code == 0);
  json j = json::parse(as_json.out);
  CHECK(j["cycle_covers"] == 13);
  CHECK(j["num_terms"] == 9);
  CHECK(j["lambda_degree"] == 2);
  std::vector<std::string> syms = j["symbols"];
  CHECK(std::find(syms.begin(), syms.end(), "V_u") != syms.end());
  CHECK(std::find(syms.begin(), syms.end(), "a") != syms.end());
}

TEST_CASE("bounds subcommand text output") {
  auto house = testutil::run_cli("bounds " + quoted_fixture("singular_house.json"));
  CHECK(house.code == 0);
  CHECK(house.out.find("nvol = 16") != std::string::npos);
  CHECK(house.out.find("N_vert = 8 (orbit path)") != std::string::npos);
  CHECK(house.out.find("cpdeg upper bound = 8") != std::string::npos);
  CHECK(house.out.find("corner lower bound = 8") != std::string::npos);
  CHECK(house.out.find("valid: yes") != std::string::npos);

  auto hp = testutil::run_cli("bounds " + quoted_fixture("hex_plus.json") + " --refine");
  CHECK(hp.code == 0);
  CHECK(hp.out.find("N_vert = 8 (facet path)") != std::string::npos);
  CHECK(hp.out.find("N_disc = 4") != std::string::npos);
  CHECK(hp.out.find("cpdeg upper bound = 42") != std::string::npos);
  CHECK(hp.out.find("refined disc total = 6, refined upper bound = 40") != std::string::npos);
}

TEST_CASE("report is deterministic and honors the seed environment override") {
  std::string base = "report " + quoted_fixture("singular_house.json");
  auto a = testutil::run_cli(base + " --seed 7");
  auto b = testutil::run_cli(base + " --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  auto env = testutil::run_cli(base + " --seed 7", false, "BLOCH_SEED=99 ");
  auto flag = testutil::run_cli(base + " --seed 99");
  REQUIRE(env.code == 0);
  CHECK(env.out == flag.out);
  CHECK(env.out != a.out);  // the seed is part of the report
}

TEST_CASE("report obeys the published schema") {
  auto run = testutil::run_cli("report " + quoted_fixture("hexagonal.json") + " --seed 3");
  REQUIRE(run.code == 0);
  json doc = json::parse(run.out);
  std::ifstream in(BLOCH_SCHEMA_PATH);
  REQUIRE(in.good());
  json schema = json::parse(in);

  CHECK(bloch::schema_violations(schema, doc).empty());

  // the checker is not a rubber stamp
  json broken = doc;
  broken.erase("bounds");
  auto missing = bloch::schema_violations(schema, broken);
  REQUIRE_FALSE(missing.empty());
  CHECK(missing[0].find("bounds") != std::string::npos);

  json wrong_type = doc;
  wrong_type["seed"] = "not a number";
  auto mismatch = bloch::schema_violations(schema, wrong_type);
  REQUIRE_FALSE(mismatch.empty());
  CHECK(mismatch[0].find("seed") != std::string::npos);
}

TEST_CASE("report --out writes the same bytes as stdout") {
  std::string path = (fs::temp_directory_path() / "bloch_report_cli.json").string();
  fs::remove(path);
  auto to_stdout = testutil::run_cli("report " + quoted_fixture("chain.json") + " --seed 5");
  auto to_file = testutil::run_cli("report " + quoted_fixture("chain.json") +
                                   " --seed 5 --out \"" + path + "\"");
  REQUIRE(to_stdout.code == 0);
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == to_stdout.out);
  fs::remove(path);
}

TEST_CASE("corner parameter overrides") {
  auto run = testutil::run_cli("corners " + quoted_fixture("hexagonal.json") +
                               " --json --params \"a=3/2,V_u=-2\"");
  REQUIRE(run.code == 0);
  json j = json::parse(run.out);
  CHECK(j["params"]["a"] == "3/2");
  CHECK(j["params"]["V_u"] == "-2");
  CHECK(j["points"].size() == 8);
  CHECK(j["all_within_tolerance"] == true);
  CHECK(j["max_relative_residual"].get<double>() <= j["tolerance"].get<double>());

  auto unknown = testutil::run_cli("corners " + quoted_fixture("hexagonal.json") +
                                   " --params \"nosuch=1\"", true);
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("error: unknown parameter symbol") != std::string::npos);

  auto bad_rat = testutil::run_cli("corners " + quoted_fixture("hexagonal.json") +
                                   " --params \"a=oops\"", true);
  CHECK(bad_rat.code == 2);
  CHECK(bad_rat.out.find("error: bad rational literal") != std::string::npos);
}

TEST_CASE("face dot emission") {
  std::string dir = (fs::temp_directory_path() / "bloch_dots_cli").string();
  fs::remove_all(dir);
  auto run = testutil::run_cli("faces " + quoted_fixture("hexagonal.json") +
                               " --emit-dot \"" + dir + "\"");
  REQUIRE(run.code == 0);

  auto poly = testutil::run_cli("polytope " + quoted_fixture("hexagonal.json") + " --json");
  REQUIRE(poly.code == 0);
  int num_faces = json::parse(poly.out)["num_faces"];

  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    CHECK(name.rfind("face_", 0) == 0);
    std::ifstream in(entry.path());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.rfind("digraph initial_graph {", 0) == 0);
    ++files;
  }
  CHECK(files == num_faces);
  CHECK(fs::exists(dir + "/face_0.dot"));
  fs::remove_all(dir);
}

TEST_CASE("off mesh emission") {
  std::string path = (fs::temp_directory_path() / "bloch_mesh_cli.off").string();
  fs::remove(path);
  auto run = testutil::run_cli("polytope " + quoted_fixture("hexagonal.json") +
                               " --emit-off \"" + path + "\"");
  REQUIRE(run.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.rfind("OFF\n", 0) == 0);
  fs::remove(path);

  // a one dimensional graph has no 3d mesh to write
  auto flat = testutil::run_cli("polytope " + quoted_fixture("chain.json") +
                                " --emit-off \"" + path + "\"", true);
  CHECK(flat.code == 2);
  CHECK(flat.out.find("error:") != std::string::npos);
}

TEST_CASE("failure modes exit nonzero with a message") {
  auto missing = testutil::run_cli("dispersion /no/such/file.json", true);
  CHECK(missing.code == 2);
  CHECK(missing.out.find("error:") != std::string::npos);

  std::string malformed = write_temp("bloch_cli_malformed.json", "{");
  auto broken = testutil::run_cli("dispersion \"" + malformed + "\"", true);
  CHECK(broken.code == 2);
  CHECK(broken.out.find("error:") != std::string::npos);
  fs::remove(malformed);

  std::string invalid = write_temp(
      "bloch_cli_invalid.json",
      R"({"d": 5, "vertices": ["u"], "edges": []})");
  auto rejected = testutil::run_cli("dispersion \"" + invalid + "\"", true);
  CHECK(rejected.code == 2);
  CHECK(rejected.out.find("error:") != std::string::npos);
  fs::remove(invalid);

  auto unknown = testutil::run_cli("frobnicate " + quoted_fixture("chain.json"), true);
  CHECK(unknown.code != 0);

  auto bad_draws = testutil::run_cli(
      "bounds " + quoted_fixture("chain.json") + " --draws 0", true);
  CHECK(bad_draws.code != 0);

  auto no_input = testutil::run_cli("bounds", true);
  CHECK(no_input.code != 0);
}
