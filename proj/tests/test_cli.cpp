#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run dcat_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = dcat::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dcat_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("validate") {
  Run r = dcat_run({"validate", std::string(DOUBLECAT_FIXTURE_DIR) + "/E1.json"});
  CHECK(r.code == dcat::kPass);
  CHECK(has(r.out, "PASS double category"));
  CHECK(has(r.out, "8 hmors"));

  const std::string bad = temp_path("bad.json");
  write(bad, R"({"kind":"doublecat","version":1,"objects":["x","y"],
    "vmors":[{"name":"u","src":"x","tgt":"y"},{"name":"v","src":"y","tgt":"x"}],
    "vcomp":[["v","u","u"]]})");
  r = dcat_run({"validate", bad});
  CHECK(r.code == dcat::kCheckFailed);
  CHECK(has(r.out, "FAIL load"));
  std::filesystem::remove(bad);
}

TEST_CASE("input errors exit with 2") {
  CHECK(dcat_run({"validate", temp_path("does_not_exist.json")}).code == dcat::kInputError);
  CHECK(dcat_run({"validate", "fixture:NOPE"}).code == dcat::kInputError);
  CHECK(dcat_run({"frobnicate"}).code == dcat::kInputError);
  CHECK(dcat_run({"gen", "--kind", "sheaf"}).code == dcat::kInputError);
  CHECK(dcat_run({"groth", "fixture:E1"}).code == dcat::kInputError);
  const std::string broken = temp_path("broken.json");
  write(broken, "{ \"kind\": ");
  Run r = dcat_run({"validate", broken});
  CHECK(r.code == dcat::kInputError);
  CHECK(!r.err.empty());
  std::filesystem::remove(broken);
}

TEST_CASE("slice and terminal") {
  const std::string path = temp_path("slice_e2.json");
  Run s = dcat_run({"slice", "fixture:E2", "--at", "xh", "-o", path});
  REQUIRE(s.code == dcat::kPass);
  CHECK(has(s.out, "PASS C/xh has (xh,1_xh) double terminal"));
  Run t = dcat_run({"terminal", path});
  CHECK(t.code == dcat::kPass);
  CHECK(has(t.out, "terminal: (xh,1_xh)"));
  std::filesystem::remove(path);
}

TEST_CASE("represent, yoneda and roundtrip on fixtures") {
  Run r = dcat_run({"represent", "fixture:E1"});
  CHECK(r.code == dcat::kPass);
  CHECK(has(r.out, "represented by (xh'',1_xh'')"));
  CHECK(!has(r.out, "FAIL"));

  Run y = dcat_run({"yoneda", "fixture:DC0"});
  CHECK(y.code == dcat::kPass);
  CHECK(has(y.out, "PASS"));
  CHECK(!has(y.out, "FAIL"));

  Run b = dcat_run({"yoneda", "fixture:E1", "--budget", "5"});
  CHECK(b.code == dcat::kInputError);

  Run rt = dcat_run({"roundtrip", "fixture:E2"});
  CHECK(rt.code == dcat::kPass);
  CHECK(has(rt.out, "triangle identities"));
}

TEST_CASE("groth and ddel round trip through files") {
  const std::string psh = temp_path("psh.json"), fib = temp_path("fib.json"), back = temp_path("back.json");
  REQUIRE(dcat_run({"gen", "--kind", "presheaf", "--seed", "3", "-o", psh}).code == dcat::kPass);
  Run g = dcat_run({"groth", psh, "-o", fib});
  CHECK(g.code == dcat::kPass);
  Run d = dcat_run({"ddel", fib, "-o", back});
  CHECK(d.code == dcat::kPass);
  CHECK(dcat_run({"validate", back}).code == dcat::kPass);
  CHECK(dcat_run({"roundtrip", psh}).code == dcat::kPass);
  for (const auto& p : {psh, fib, back}) std::filesystem::remove(p);
}

TEST_CASE("machine format is JSON lines") {
  Run r = dcat_run({"--format", "machine", "represent", "fixture:E2"});
  CHECK(r.code == dcat::kPass);
  std::istringstream in(r.out);
  int checks = 0;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    CHECK((j["type"] == "check" || j["type"] == "info"));
    if (j["type"] == "check") {
      ++checks;
      CHECK(j["status"] == "PASS");
    }
  }
  CHECK(checks > 0);
}

TEST_CASE("gen is deterministic") {
  for (const char* kind : {"category", "doublecat", "presheaf", "dfib"}) {
    Run a = dcat_run({"gen", "--kind", kind, "--seed", "11"});
    Run b = dcat_run({"gen", "--kind", kind, "--seed", "11"});
    CHECK(a.code == dcat::kPass);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["kind"] == kind);
  }
  CHECK(dcat_run({"fib-equiv", "--seed", "2", "--count", "10"}).code == dcat::kPass);
}
