// End-to-end checks against the installed binary; CURVTENSOR_BIN is supplied
// by the build so the suite always drives the freshly linked tool.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "curvtensor/json_io.hpp"

using curv::io::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(CURVTENSOR_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

const std::string& fixture_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/curvcliXXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return std::string(tmpl);
  }();
  return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
  const std::string path = fixture_dir() + "/" + name;
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << text;
  return path;
}

std::string self3() {
  return write_fixture("self3.json", R"({
    "kind": "self-adjoint",
    "matrix": [["2","0","0"],["0","2","0"],["0","0","1/2"]]
  })");
}

std::string remark_terms() {
  return write_fixture("remark.json", R"([
    {"build": "S", "op": {"kind": "self-adjoint",
      "matrix": [["1","0","0"],["0","1","0"],["0","0","1"]]}},
    {"build": "S", "op": {"kind": "self-adjoint",
      "matrix": [["2","0","0"],["0","2","0"],["0","0","1/2"]]}},
    {"build": "Lambda", "op": {"kind": "skew-adjoint",
      "matrix": [["0","1","0"],["-1","0","0"],["0","0","0"]]}}
  ])");
}

}  // namespace

TEST_CASE("axiom check reports a manifest and a verdict") {
  const auto r = run("check --op " + self3());
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["is_act"].get<bool>());
  CHECK(j["witnesses"].empty());
  const json& m = j["manifest"];
  CHECK(m["tool"] == "curvtensor");
  CHECK(m["subcommand"] == "check");
  CHECK(m["mode"] == "float64");
  CHECK(m["tolerance"].get<double>() == 1e-9);
  CHECK(m["seed"].get<long>() == 1);
  CHECK(m["inputs"].contains("op"));
  CHECK(m["inputs"]["op"]["digest"].get<std::string>().size() == 16);
  // Nothing time-dependent may leak into the report.
  CHECK_FALSE(m.contains("elapsed"));
  CHECK_FALSE(m.contains("wall_ms"));
}

TEST_CASE("reruns are byte-identical") {
  const std::string cmd = "depend --terms " + remark_terms() + " --seed 9";
  const auto first = run(cmd);
  const auto second = run(cmd);
  CHECK(first.status == 0);
  CHECK(first.out == second.out);
  CHECK_FALSE(first.out.empty());
}

TEST_CASE("dependence verdict on the three-term relation") {
  const auto r = run("depend --terms " + remark_terms());
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["count"].get<int>() == 3);
  CHECK_FALSE(j["independent"].get<bool>());
  CHECK(j["nullity"].get<int>() == 1);
  CHECK(j["proper"].get<bool>());
  CHECK(j["exact_certificate"].get<bool>());
  REQUIRE(j["coefficients"].size() == 3);
  CHECK(j["coefficients"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["coefficients"][1].get<double>() == doctest::Approx(-1.0));
  CHECK(j["coefficients"][2].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("mode comes from the flag, then the context file") {
  const std::string ctx = write_fixture("ctx_exact.json",
                                        R"({"dim": 3, "mode": "exact", "tolerance": 1e-9})");
  const std::string op = self3();
  auto j = json::parse(run("check --op " + op + " --context " + ctx).out);
  CHECK(j["manifest"]["mode"] == "exact");
  CHECK(j["manifest"]["inputs"].contains("context"));
  j = json::parse(run("--mode float64 check --op " + op + " --context " + ctx).out);
  CHECK(j["manifest"]["mode"] == "float64");
  j = json::parse(run("--mode exact --seed 7 check --op " + op).out);
  CHECK(j["manifest"]["mode"] == "exact");
  CHECK(j["manifest"]["seed"].get<long>() == 7);
}

TEST_CASE("unmet premises exit 2 with the reason in the report") {
  const std::string ops = write_fixture("not_chain.json", R"([
    {"kind": "self-adjoint", "matrix": [[1,0],[0,1]]},
    {"kind": "self-adjoint", "matrix": [[1,0],[0,1]]},
    {"kind": "self-adjoint", "matrix": [[1,0],[0,1]]}
  ])");
  const auto r = run("chain --ops " + ops + " --signs \"+\"");
  CHECK(r.status == 2);
  const json j = json::parse(r.out);
  CHECK(j["error"] == "not_a_chain");
  CHECK(j["manifest"]["subcommand"] == "chain");

  const std::string tau = write_fixture("sym_tau.json", R"([[1,0],[0,1]])");
  const auto sg = run("structgroup --tau " + tau + " --trials 2");
  CHECK(sg.status == 2);
  CHECK(json::parse(sg.out).contains("error"));
}

TEST_CASE("malformed input exits 1") {
  const std::string bad = write_fixture("garbage.json", "{nope");
  const auto r = run("check --op " + bad);
  CHECK(r.status == 1);
  const json j = json::parse(r.out);
  const auto msg = j["error"].get<std::string>();
  CHECK(msg.find("parse error") != std::string::npos);
  CHECK(msg.find("garbage.json") != std::string::npos);

  // check needs exactly one of --op / --tensor
  const auto both = run("check --op " + self3() + " --tensor " + self3());
  CHECK(both.status == 1);
  const auto neither = run("check");
  CHECK(neither.status == 1);
}

TEST_CASE("usage errors exit 64 and help exits 0") {
  CHECK(run("check --bogus-flag 3").status == 64);
  CHECK(run("frobnicate").status == 64);
  CHECK(run("--help").status == 0);
  CHECK(run("chain --ops missing.json").status == 64);  // --signs is required
}

TEST_CASE("--out writes the identical report to a file") {
  const std::string out_path = fixture_dir() + "/report.json";
  const auto direct = run("check --op " + self3());
  const auto filed = run("check --op " + self3() + " --out " + out_path);
  CHECK(filed.status == 0);
  CHECK(filed.out.empty());
  std::ifstream f(out_path, std::ios::binary);
  REQUIRE(f.good());
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(text == direct.out);
}

TEST_CASE("emitted tensors survive a parse and serialize round trip") {
  const auto r = run("build --op " + self3());
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.contains("tensor"));
  const json& tj = j["tensor"];
  CHECK(tj.contains("canonical"));

  const auto ctx = curv::SpaceContext<double>::standard(3);
  const auto once = curv::io::tensor_from_json<double>(tj, &ctx);
  const json again = curv::io::tensor_to_json<double>(once);
  const auto twice = curv::io::tensor_from_json<double>(again, &ctx);
  CHECK(curv::tensors_near(once, twice, 0.0));
  CHECK(again == curv::io::tensor_to_json<double>(twice));
  CHECK(curv::is_act(ctx, once).is_act);
}

TEST_CASE("fuzz campaigns run clean on a small budget") {
  const auto r = run("fuzz --campaign axioms --trials 5 --dims 2,3 --seed 3");
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["ok"].get<bool>());
  REQUIRE(j["results"].is_array());
  for (const auto& c : j["results"]) {
    CHECK(c["failures"].get<long>() == 0);
    CHECK(c["trials"].get<long>() > 0);
  }
}
