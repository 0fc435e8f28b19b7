#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/cli.hpp"

using namespace hardy;

// Runs from the source directory (see CMakeLists.txt) so argv echoes are stable.

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_command(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* const kWorked[] = {"worked_p1_q1", "worked_p1_qhalf", "worked_p2_q2"};

}  // namespace

TEST_CASE("constants A_1") {
  const Run r = run({"constants", "data/worked_p1_q1.json", "--set", "A"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("\"A_1\": 3\n") != std::string::npos);
  CHECK(r.out.find("\"D_1\"") == std::string::npos);
}

TEST_CASE("verify six") {
  const Run r = run({"verify", "data/worked_p1_q1.json", "--suite", "six", "--trials", "100", "--seed", "7"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("\"failures\": 0") != std::string::npos);
  CHECK(r.out.find("\"failures\": 1") == std::string::npos);
  CHECK(r.out.find("\"status\": \"ok\"") != std::string::npos);
}

TEST_CASE("input errors") {
  std::ofstream("cli_bad.json") << "{\"window\": ";
  Run r = run({"oracle", "cli_bad.json", "--form", "GOP"});
  CHECK(r.status == kExitInputError);
  CHECK(r.out.empty());
  CHECK(r.err.find("line 1") != std::string::npos);
  std::remove("cli_bad.json");

  r = run({"oracle", "data/missing.json", "--form", "GOP"});
  CHECK(r.status == kExitInputError);

  r = run({"oracle", "data/worked_p1_q1.json", "--form", "NOPE"});
  CHECK(r.status == kExitInputError);
  CHECK(r.err.find("NOPE") != std::string::npos);

  r = run({"verify", "data/worked_p2_q2.json", "--suite", "six"});
  CHECK(r.status == kExitInputError);
  CHECK(r.err.find("p <= 1") != std::string::npos);
}

TEST_CASE("usage errors") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate", "data/worked_p1_q1.json"},
           {"constants", "data/worked_p1_q1.json", "--bogus"},
           {"constants", "data/worked_p1_q1.json", "--set", "Z"},
           {"oracle", "data/worked_p1_q1.json"},
           {"verify", "data/worked_p1_q1.json", "--suite", "nine"},
           {"--format", "xml", "constants", "data/worked_p1_q1.json"}}) {
    const Run r = run(args);
    CHECK(r.status == kExitInputError);
    CHECK(r.err.find("Usage:") != std::string::npos);
    CHECK(r.out.empty());
  }
  const Run h = run({"--help"});
  CHECK(h.status == kExitOk);
  CHECK(h.out.find("check-kernel") != std::string::npos);
}

TEST_CASE("every subcommand runs") {
  const std::string f = "data/worked_p1_q1.json";
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"check-kernel", f},
           {"constants", f, "--set", "D"},
           {"characterize", f},
           {"oracle", f, "--form", "STRONG", "--strategy", "support_grid", "--budget", "500"},
           {"discretize", f, "--D", "4"},
           {"verify", f, "--suite", "kernel-main", "--trials", "20"},
           {"verify", f, "--suite", "dual", "--trials", "20"},
           {"verify", f, "--suite", "bridge"},
           {"verify", f, "--suite", "discretize", "--trials", "20"},
           {"bridge", f, "--form", "SUP_ITER"}}) {
    CAPTURE(args[0]);
    const Run r = run(args);
    CHECK(r.status == kExitOk);
    CHECK(r.err.empty());
    CHECK(r.out.rfind("{\n  \"command\": \"" + args[0] + "\"", 0) == 0);
  }
}

TEST_CASE("table format") {
  const Run r = run({"constants", "data/worked_p1_q1.json", "--format", "table", "--set", "A"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("results.constants.A_1\t3\n") != std::string::npos);
  const Run g = run({"--format", "table", "constants", "data/worked_p1_q1.json"});
  CHECK(g.out.find("command\tconstants\n") != std::string::npos);
}

TEST_CASE("golden reports") {
  for (const char* name : kWorked) {
    CAPTURE(name);
    const std::vector<std::string> args{"characterize", std::string("data/") + name + ".json", "--seed", "7"};
    const Run first = run(args);
    const Run second = run(args);
    CHECK(first.status == kExitOk);
    CHECK(first.out == second.out);
    CHECK(first.out == slurp(std::string("tests/golden/characterize_") + name + ".json"));
  }
}
