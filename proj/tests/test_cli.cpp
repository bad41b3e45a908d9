#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_file = std::string(std::tmpnam(nullptr)) + ".out";
  std::string cmd = std::string(IJT_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream is(out_file);
  std::stringstream ss;
  ss << is.rdbuf();
  r.output = ss.str();
  std::remove(out_file.c_str());
  return r;
}

}  // namespace

TEST_CASE("verify exits 0 on the running pair and reports the dimensions") {
  auto r = run_cli("verify --I 1,2,3,5,9 --Jbar 2,7,8,9 --what diagram");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("5/5 checks passed") != std::string::npos);
}

TEST_CASE("count emits the catalan number for a nu word") {
  auto r = run_cli("count --nu ENEENNE");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("catalan = 16") != std::string::npos);

  auto csv = run_cli("--format csv count --nu ENN");
  REQUIRE(csv.exit_code == 0);
  REQUIRE(csv.output.find("nu,catalan,narayana,schroeder") != std::string::npos);
  REQUIRE(csv.output.find("ENN,3,1 2,3 2") != std::string::npos);

  auto js = run_cli("--format json count --I 1,2 --Jbar 2,3,4");
  REQUIRE(js.exit_code == 0);
  REQUIRE(js.output.find("\"catalan\": \"3\"") != std::string::npos);
}

TEST_CASE("reduce reports the five-leaf tree of the claw pair") {
  auto r = run_cli("reduce --I 1,2 --Jbar 2,3,4 --order length");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("leaves: 5") != std::string::npos);
  REQUIRE(r.output.find("full-dimensional: 3") != std::string::npos);
}

TEST_CASE("construct emits the graphs, dot output is stable") {
  auto a = run_cli("--format dot construct --I 1,2,3,5,9 --Jbar 2,7,8,9");
  auto b = run_cli("--format dot construct --I 1,2,3,5,9 --Jbar 2,7,8,9");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.output == b.output);
  REQUIRE(a.output.find("digraph") != std::string::npos);

  auto t = run_cli("construct --I 1,2,3,5,9 --Jbar 2,7,8,9");
  REQUIRE(t.output.find("arcs (15)") != std::string::npos);
  REQUIRE(t.output.find("15 routes") != std::string::npos);
}

TEST_CASE("invalid input exits 2") {
  REQUIRE(run_cli("verify --I 2 --Jbar 1").exit_code == 2);
  REQUIRE(run_cli("bogus-subcommand").exit_code == 2);
  REQUIRE(run_cli("verify --I 2 --Jbar 1 --normalize").exit_code == 2);
  // Normalization rescues prunable pairs.
  REQUIRE(run_cli("count --I 2 --Jbar 1,2 --normalize").exit_code == 0);
}

TEST_CASE("resource limits exit 3") {
  auto r = run_cli("reduce --I 1,2,3,5,9 --Jbar 2,7,8,9 --max-reductions 2");
  REQUIRE(r.exit_code == 3);
}

TEST_CASE("triangulate emits facets and a dual graph") {
  auto r = run_cli("triangulate --I 1,2,3,5,9 --Jbar 2,7,8,9");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("facets: 16") != std::string::npos);

  auto d = run_cli("--format dot triangulate --I 1,2 --Jbar 2,3,4");
  REQUIRE(d.exit_code == 0);
  REQUIRE(d.output.find("graph dual") != std::string::npos);
}

TEST_CASE("sweep exits 0 up to n=3 and is byte-deterministic") {
  auto a = run_cli("sweep --max-n 3 --random 5 --random-n 5 --seed 7");
  auto b = run_cli("sweep --max-n 3 --random 5 --random-n 5 --seed 7");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.output == b.output);
  REQUIRE(a.output.find("sweep passed") != std::string::npos);
}
