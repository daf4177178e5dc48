// End-to-end tests of the command-line tool: formats, exit codes and
// byte-for-byte determinism.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string cli_path() {
  const char* env = std::getenv("FPINDEX_CLI");
  return env ? env : "./build/fpindex";
}

std::string data_path(const std::string& name) {
  const char* env = std::getenv("FPINDEX_DATA");
  std::string dir = env ? env : "./data";
  // Bundles resolve paths relative to their own directory; hand out
  // absolute paths so scratch bundles can reference the data files.
  return (std::filesystem::absolute(dir) / name).string();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_once(const std::string& args) {
  std::string command = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.out.append(buffer, n);
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Every invocation must reproduce its bytes exactly.
RunResult run(const std::string& args) {
  RunResult first = run_once(args);
  RunResult second = run_once(args);
  CHECK(first.code == second.code);
  CHECK(first.out == second.out);
  return first;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "fpindex_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  auto path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli: homology") {
  RunResult r = run("homology " + data_path("triangle.cplx"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["euler"] == 0);
  CHECK(j["groups"][0]["betti"] == 1);
  CHECK(j["groups"][1]["betti"] == 1);

  RunResult rp2 = run("homology " + data_path("rp2.cplx"));
  json j2 = json::parse(rp2.out);
  CHECK(j2["groups"][1]["torsion"] == json::array({2}));

  // subdivision preserves the groups
  RunResult fine = run("homology " + data_path("rp2.cplx") + " --level 1");
  json j3 = json::parse(fine.out);
  CHECK(j3["groups"] == j2["groups"]);
  CHECK(j3["euler"] == 1);

  RunResult reduced = run("homology " + data_path("disk.cplx") + " --reduced");
  json j4 = json::parse(reduced.out);
  for (const auto& g : j4["groups"]) {
    CHECK(g["betti"] == 0);
    CHECK(g["torsion"].empty());
  }
}

TEST_CASE("cli: parse errors exit with code 2") {
  std::string bad = write_scratch("bad.cplx", "a a b\n");
  RunResult r = run("homology " + bad);
  CHECK(r.code == 2);
  RunResult missing = run("homology /nonexistent/file.cplx");
  CHECK(missing.code == 2);
  CHECK(json::parse(missing.out)["error"]["code"] == 2);
}

TEST_CASE("cli: uct-check") {
  RunResult r = run("uct-check " + data_path("rp2.cplx"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["items"][1]["torsion_homology"] == json::array({2}));
  CHECK(j["items"][1]["torsion_next_cohomology"] == json::array({2}));

  for (const char* file : {"klein.cplx", "torus.cplx", "sphere.cplx"}) {
    CHECK(json::parse(run("uct-check " + data_path(file)).out)["pass"] == true);
  }
}

TEST_CASE("cli: lefschetz via both routes") {
  std::string map = write_scratch(
      "rot.map", "h0 -> h1\nh1 -> h2\nh2 -> h3\nh3 -> h4\nh4 -> h5\nh5 -> h0\n");
  RunResult r = run("lefschetz " + data_path("hexagon.cplx") + " " + map);
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["chain_lefschetz"] == 0);
  CHECK(j["homology_lefschetz"] == 0);
  CHECK(j["match"] == true);
}

TEST_CASE("cli: nerve of the star cover is the complex itself") {
  RunResult r = run("nerve " + data_path("hexagon.cplx") + " " + data_path("hexagon_stars.cover"));
  REQUIRE(r.code == 0);
  // six edges of a cycle, in the element names
  CHECK(r.out == "U0 U1\nU0 U5\nU1 U2\nU2 U3\nU3 U4\nU4 U5\n");
}

TEST_CASE("cli: approx") {
  RunResult r = run("approx " + data_path("identity_disk.bundle"));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["chain_map"] == true);
  CHECK(j["carried"] == true);
  CHECK(j["acyclicity"]["all"] == true);

  // The projective-plane value: refused over Z (code 4), accepted over Q.
  RunResult z = run("approx " + data_path("rp2_value.bundle") + " --monotone-complete");
  CHECK(z.code == 4);
  CHECK(json::parse(z.out)["error"]["kind"] == "acyclicity-failure");
  RunResult q =
      run("approx " + data_path("rp2_value.bundle") + " --monotone-complete --oracle-rational");
  CHECK(q.code == 0);
  CHECK(json::parse(q.out)["carried"] == true);

  // Missing assignments without the completion flag: input error.
  RunResult strict = run("approx " + data_path("rp2_value.bundle"));
  CHECK(strict.code == 1);
}

TEST_CASE("cli: index values") {
  CHECK(json::parse(run("index " + data_path("identity_disk.bundle")).out)["value"] == 1);
  CHECK(json::parse(run("index " + data_path("rotation_hexagon.bundle")).out)["value"] == 0);
  json doubling = json::parse(run("index " + data_path("doubling_hexagon.bundle")).out);
  CHECK(doubling["value"] == -1);
  CHECK(doubling["traces"] == json::array({1, 2}));
}

TEST_CASE("cli: inadmissible bundles exit with code 3") {
  std::string opens = write_scratch("edge.opens", "a\nb\na b\n");
  std::string carrier = write_scratch("id_edge.carrier", "a -> a\nb -> b\na b -> a b\n");
  std::string bundle = write_scratch(
      "inadmissible.bundle",
      "complex " + data_path("disk.cplx") + "\nopen-set edge.opens\ncarrier id_edge.carrier\n");
  RunResult r = run("index " + bundle);
  CHECK(r.code == 3);
  json j = json::parse(r.out);
  CHECK(j["error"]["kind"] == "inadmissible");
  CHECK(j["error"]["detail"].get<std::string>().find("(a)") != std::string::npos);
}

TEST_CASE("cli: stability") {
  RunResult r = run("index " + data_path("doubling_hexagon.bundle") + " --stability");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["stable"] == true);
  CHECK(j["coarse"]["value"] == -1);
  CHECK(j["fine"]["value"] == -1);
  CHECK(j["fine"]["level_k"] == 1);
}

TEST_CASE("cli: star-described open sets") {
  // The identity carrier never separates its fixed set: exhausted.
  RunResult r = run("index " + data_path("identity_disk.bundle") + " --stars a --level-cap 2");
  CHECK(r.code == 5);

  // A constant map is localized after a few refinements.
  std::string carrier = write_scratch(
      "const_a.carrier", "a -> a\nb -> a\nc -> a\na b -> a\na c -> a\nb c -> a\na b c -> a\n");
  std::string bundle = write_scratch(
      "const_a.bundle", "complex " + data_path("disk.cplx") + "\ncarrier const_a.carrier\n");
  RunResult ok = run("index " + bundle + " --stars a --level-cap 4");
  REQUIRE(ok.code == 0);
  json j = json::parse(ok.out);
  CHECK(j["result"]["value"] == 1);
  CHECK(j["refinements_used"].get<int>() >= 1);
}

TEST_CASE("cli: composition bundles") {
  // Constant maps disk -> hexagon -> disk; the composite has index 1.
  std::string f1 = write_scratch("to_hexagon.carrier", "a -> h0\nb -> h0\nc -> h0\n");
  std::string f2 = write_scratch("to_disk.carrier",
                                 "h0 -> a\nh1 -> a\nh2 -> a\nh3 -> a\nh4 -> a\nh5 -> a\n");
  std::string bundle = write_scratch("composite.bundle",
                                     "complex " + data_path("disk.cplx") +
                                         "\ncarrier to_hexagon.carrier\nspace " +
                                         data_path("hexagon.cplx") + "\ncarrier to_disk.carrier\n");
  RunResult r = run("index " + bundle + " --monotone-complete");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"] == 1);
}

TEST_CASE("cli: domination route") {
  RunResult r = run("index " + data_path("annulus_core.bundle") + " --dominate " +
                    data_path("annulus.retraction"));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"] == 0);
}

TEST_CASE("cli: axiom harness") {
  for (const char* axiom : {"add", "hom", "comm", "norm"}) {
    RunResult r = run(std::string("verify --axiom ") + axiom);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    for (const auto& check : j["checks"]) CHECK(check["status"] != "fail");
  }
}
