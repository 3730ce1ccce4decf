#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nclin/cli.hpp"

using nlohmann::json;

namespace {

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"nclin"};
  for (const char* a : args) argv.push_back(a);
  return nclin::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  f << content;
}

// minimal structural validator for the subset of JSON Schema the repo ships:
// type, required, properties (refs checked by presence of the target file)
bool validate(const json& schema, const json& value) {
  if (schema.contains("type")) {
    std::string t = schema["type"];
    if (t == "object" && !value.is_object()) return false;
    if (t == "array" && !value.is_array()) return false;
    if (t == "number" && !value.is_number()) return false;
    if (t == "integer" && !value.is_number_integer()) return false;
    if (t == "string" && !value.is_string()) return false;
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!value.contains(key.get<std::string>())) return false;
  if (schema.contains("properties") && value.is_object())
    for (auto& [key, sub] : schema["properties"].items())
      if (value.contains(key) && !sub.contains("$ref"))
        if (!validate(sub, value[key])) return false;
  return true;
}

const char* kTrianglePath = "/tmp/nclin_test_triangle.lin2k";
const char* kBadPath = "/tmp/nclin_test_bad.lin2k";
const char* kNonHomPath = "/tmp/nclin_test_nonhom.lin2k";

struct Fixture {
  Fixture() {
    write_file(kTrianglePath, "lin2k 3 3\nI 1 2 1 0\nI 2 3 1 0\nI 1 3 1 0\n");
    write_file(kBadPath, "lin2k 3 2\nI 1 9 1 0\n");
    write_file(kNonHomPath, "lin2k 3 2\nI 1 2 1 1\n");
  }
};
Fixture fixture;

}  // namespace

TEST_CASE("solve triangle: values, exit codes, schema") {
  const char* out = "/tmp/nclin_test_solve.json";
  REQUIRE(run({"solve", kTrianglePath, "--out", out}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["sdp_value"].get<double>() == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(j["expected_value"].get<double>() == doctest::Approx(2.5947).epsilon(1e-3));
  CHECK(j["ratio"].get<double>() >= 0.864);
  json schema = json::parse(slurp(std::string(SCHEMA_DIR) + "/solve_report.schema.json"));
  CHECK(validate(schema, j));
  json mschema = json::parse(slurp(std::string(SCHEMA_DIR) + "/manifest.schema.json"));
  json manifest = json::parse(slurp(std::string(out) + ".manifest.json"));
  CHECK(validate(mschema, manifest));
}

TEST_CASE("vacuous instance reports zero values and ratio 1") {
  const char* empty = "/tmp/nclin_test_empty.lin2k";
  write_file(empty, "lin2k 3 3\n");
  const char* out = "/tmp/nclin_test_empty.json";
  REQUIRE(run({"solve", empty, "--out", out}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["sdp_value"].get<double>() == 0.0);
  CHECK(j["expected_value"].get<double>() == 0.0);
  CHECK(j["ratio"].get<double>() == 1.0);
}

TEST_CASE("exit code 2 on malformed input and non-homogeneous instances") {
  CHECK(run({"solve", kBadPath}) == 2);
  CHECK(run({"solve", kNonHomPath}) == 2);
  CHECK(run({"solve", "/tmp/definitely_missing_file.lin2k"}) == 2);
  CHECK(run({"ratio", "--k", "3", "--problem", "nonsense"}) == 2);
}

TEST_CASE("exit code 4 on budget blowups") {
  // N = 40 with k = 3 pushes the GWB representation far past the budget
  const char* big = "/tmp/nclin_test_big.lin2k";
  std::ostringstream os;
  os << "lin2k 3 40\n";
  for (int i = 1; i < 40; ++i) os << "I " << i << " " << i + 1 << " 1 0\n";
  write_file(big, os.str());
  CHECK(run({"round", big, "--method", "gwb"}) == 4);
}

TEST_CASE("round gwb on the triangle agrees with solve analytic within 0.05") {
  const char* out1 = "/tmp/nclin_test_round_a.json";
  const char* out2 = "/tmp/nclin_test_round_g.json";
  REQUIRE(run({"round", kTrianglePath, "--method", "analytic", "--out", out1}) == 0);
  REQUIRE(run({"round", kTrianglePath, "--method", "gwb", "--out", out2}) == 0);
  json a = json::parse(slurp(out1)), g = json::parse(slurp(out2));
  CHECK(std::abs(a["expected_value"].get<double>() - g["expected_value"].get<double>()) < 0.15);
  json schema = json::parse(slurp(std::string(SCHEMA_DIR) + "/round_report.schema.json"));
  CHECK(validate(schema, a));
  CHECK(validate(schema, g));
}

TEST_CASE("ratio and ratio-table reproduce the frozen goldens") {
  const char* out = "/tmp/nclin_test_table.csv";
  REQUIRE(run({"ratio-table", "--problem", "maxkcut", "--ks", "3,4,5,10", "--out", out}) == 0);
  std::string csv = slurp(out);
  CHECK(csv.find("k,problem,ratio") == 0);
  // golden regression values (12 significant digits used by the CLI)
  CHECK(csv.find("3,maxkcut,0.86497") != std::string::npos);
  CHECK(csv.find("4,maxkcut,0.86428") != std::string::npos);
  CHECK(csv.find("5,maxkcut,0.87469") != std::string::npos);
  CHECK(csv.find("10,maxkcut,0.91952") != std::string::npos);
}

TEST_CASE("byte-identical outputs for identical command and seed") {
  const char* o1 = "/tmp/nclin_det_1.json";
  const char* o2 = "/tmp/nclin_det_2.json";
  REQUIRE(run({"round", kTrianglePath, "--method", "gwb-mc", "--samples", "50", "--seed", "9",
               "--out", o1}) == 0);
  REQUIRE(run({"round", kTrianglePath, "--method", "gwb-mc", "--samples", "50", "--seed", "9",
               "--out", o2}) == 0);
  CHECK(slurp(o1) == slurp(o2));
  REQUIRE(run({"round", kTrianglePath, "--method", "gwb-mc", "--samples", "50", "--seed", "10",
               "--out", o2}) == 0);
  CHECK(slurp(o1) != slurp(o2));
}

TEST_CASE("curve outputs carry headers") {
  const char* out = "/tmp/nclin_curve.csv";
  REQUIRE(run({"curve", "fid", "--k", "3", "--points", "16", "--out", out}) == 0);
  CHECK(slurp(out).rfind("theta,fid,", 0) == 0);
  REQUIRE(run({"curve", "cauchy", "--lambda-re", "-0.5", "--points", "16", "--out", out}) == 0);
  CHECK(slurp(out).rfind("theta,pdf", 0) == 0);
  REQUIRE(run({"ratio-curve", "--k", "3", "--problem", "homlin", "--points", "32", "--out",
               out}) == 0);
  CHECK(slurp(out).rfind("lambda,ratio_inequation,ratio_equation", 0) == 0);
}

TEST_CASE("gwb command prints orders and passes verification") {
  const char* out = "/tmp/nclin_gwb.txt";
  const char* dump = "/tmp/nclin_gwb_dump.json";
  REQUIRE(run({"gwb", "--n", "2", "--k", "3", "--verify", "--dump", dump, "--out", out}) == 0);
  std::string txt = slurp(out);
  CHECK(txt.find("group_order 48") != std::string::npos);
  CHECK(txt.find("quotient_order 24") != std::string::npos);
  CHECK(txt.find("dimension 12") != std::string::npos);
  CHECK(txt.find("[FAIL]") == std::string::npos);
  json dj = json::parse(slurp(dump));
  json schema = json::parse(slurp(std::string(SCHEMA_DIR) + "/gwb_dump.schema.json"));
  CHECK(validate(schema, dj));
  CHECK(dj["dim"].get<int>() == 12);
  CHECK(dj["sigma"].size() == 2);
}

TEST_CASE("manifest sidecar written next to --out") {
  const char* out = "/tmp/nclin_manifest_probe.json";
  REQUIRE(run({"solve", kTrianglePath, "--seed", "5", "--out", out}) == 0);
  json m = json::parse(slurp(std::string(out) + ".manifest.json"));
  CHECK(m["seed"].get<int>() == 5);
  CHECK(m["outputs"].size() == 1);
  CHECK(m["outputs"][0]["path"].get<std::string>() == out);
}
