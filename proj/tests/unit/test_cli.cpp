#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "arccover/io.hpp"

namespace {

struct CommandResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

std::string cli_path() {
  const char* path = std::getenv("ARCCOVER_CLI");
  REQUIRE_MESSAGE(path != nullptr, "ARCCOVER_CLI must point at the binary");
  return path;
}

CommandResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

}  // namespace

TEST_CASE("cli: analyze reports the regime") {
  const auto r = run_cli(
      "analyze --seq 'powerlaw a=1 alpha=2' --gauge 'monomial s=0.5'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("critical_exponent,0.5,analytic") != std::string::npos);
  CHECK(r.output.find("shepp_series,convergent") != std::string::npos);
  CHECK(r.output.find("gauge_series,divergent") != std::string::npos);
  CHECK(r.output.find("full g-measure in every open set") != std::string::npos);
  CHECK(r.output.find("dimension 0.5") != std::string::npos);

  const auto null_gauge = run_cli(
      "analyze --seq 'powerlaw a=1 alpha=2' --gauge 'monomial s=0.6'");
  CHECK(null_gauge.output.find("gauge_series,convergent") != std::string::npos);
  CHECK(null_gauge.output.find("g-measure zero") != std::string::npos);

  const auto covered = run_cli("analyze --seq 'harmonic c=1'");
  CHECK(covered.output.find("shepp_series,divergent") != std::string::npos);
  CHECK(covered.output.find("full coverage") != std::string::npos);

  const auto thin = run_cli("analyze --seq 'geometric q=0.5'");
  CHECK(thin.output.find("critical_exponent,0,analytic") != std::string::npos);
  CHECK(thin.output.find("nonempty") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("badcmd").exit_code == 2);
  CHECK(run_cli("analyze").exit_code == 2);  // --seq required
  const auto bad_param = run_cli("analyze --seq 'powerlaw a=1 alpha=0.5'");
  CHECK(bad_param.exit_code == 2);
  CHECK(bad_param.output.find("alpha must be > 1") != std::string::npos);
  CHECK(run_cli("simulate --seq 'harmonic c=1' --format xml").exit_code == 2);
  const auto deep_tail = run_cli(
      "simulate --seq 'harmonic c=1' --horizon 100 --tails 1000 --trials 1");
  CHECK(deep_tail.exit_code == 2);
  CHECK(deep_tail.output.find("exceeds the horizon") != std::string::npos);
  // Default tail starts clip to short horizons instead of erroring.
  CHECK(run_cli("simulate --seq 'harmonic c=1' --horizon 100 --trials 1")
            .exit_code == 0);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: io errors exit 3") {
  const auto r = run_cli(
      "analyze --seq 'harmonic c=1' --out /nonexistent_dir_42/file.csv");
  CHECK(r.exit_code == 3);
}

TEST_CASE("cli: simulate emits a metadata header and curve") {
  const auto r = run_cli(
      "simulate --seq 'explicit 0.5,0.25' --horizon 2 --trials 1 --tails 1 "
      "--seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("# arccover", 0) == 0);
  CHECK(r.output.find("# command: simulate") != std::string::npos);
  CHECK(r.output.find("# seed: 42") != std::string::npos);
  CHECK(r.output.find("N,uncovered_measure") != std::string::npos);
}

TEST_CASE("cli: find-point certificate schema") {
  const auto r = run_cli(
      "find-point --seq 'geometric q=0.5' --depth 2 --cap 100000 --format json");
  CHECK(r.exit_code == 0);
  const auto body = r.output;
  const auto j = nlohmann::json::parse(body);
  CHECK(j["result"]["complete"] == true);
  CHECK(j["result"]["verified"] == true);
  CHECK(j["result"]["certificate"]["indices"].size() == 2);
  CHECK(j["result"]["certificate"]["arcs"][0]["n"] == 1);
  CHECK(j["meta"]["command"] == "find-point");
}

TEST_CASE("cli: byte-identical reruns") {
  const std::string tmp1 = "/tmp/arccover_cli_a.csv";
  const std::string tmp2 = "/tmp/arccover_cli_b.csv";
  const std::string flags =
      "simulate --seq 'harmonic c=1.2' --horizon 2000 --trials 3 --seed 9 "
      "--tails 10,100 --out ";
  CHECK(run_cli(flags + tmp1).exit_code == 0);
  CHECK(run_cli(flags + tmp2).exit_code == 0);
  CHECK(arccover::read_text_file(tmp1) == arccover::read_text_file(tmp2));
  std::remove(tmp1.c_str());
  std::remove(tmp2.c_str());
}

TEST_CASE("cli: sweep emits one row per grid point") {
  const auto r = run_cli(
      "sweep --seq 'powerlaw a=1' --param alpha --values 1.5,2 --horizon 4000 "
      "--trials 2 --seed 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("param,value,critical_exponent,mean_dimension") !=
        std::string::npos);
  CHECK(r.output.find("alpha,1.5,0.66666666666666663,") != std::string::npos);
  CHECK(r.output.find("alpha,2,0.5,") != std::string::npos);
}
