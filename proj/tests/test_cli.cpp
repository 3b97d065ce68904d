#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "scent/io.hpp"
#include "scent/random.hpp"
#include "scent/states.hpp"
#include "subprocess.hpp"

using namespace scent;

namespace {

const std::string kCli = SCENT_CLI_PATH;

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "scent_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string scratch_file(const std::string& name) {
  return (scratch_dir() / name).string();
}

// Stderr carries the human-readable summary; drop it so that the captured
// output is exactly the report document.
CommandResult run_cli(const std::string& args) {
  return run_command(kCli + " " + args + " 2>/dev/null");
}

// Pulls a result value out of a report document by key.
double extract_result(const std::string& report, const std::string& key) {
  const std::string marker = "\"" + key + "\":{\"value\":";
  const auto pos = report.find(marker);
  REQUIRE(pos != std::string::npos);
  return std::strtod(report.c_str() + pos + marker.size(), nullptr);
}

std::string bell_sc_file() {
  static const std::string path = [] {
    ComplexMatrix half(2, 2);
    half << 0.5, 0.5, 0.5, 0.5;
    const std::string p = scratch_file("bell_sc.json");
    save_sc_file(p, SchmidtCorrelatedState(std::move(half)));
    return p;
  }();
  return path;
}

std::string random_sc_file() {
  static const std::string path = [] {
    Rng rng(110);
    const std::string p = scratch_file("random_sc.json");
    save_sc_file(p, random_sc_state(3, rng));
    return p;
  }();
  return path;
}

std::string bell_family_file() {
  static const std::string path = [] {
    const std::string p = scratch_file("bell_family.json");
    save_family_file(p, bell_pair_family(0, 1));
    return p;
  }();
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("realize reports a converged ensemble") {
  const CommandResult r =
      run_cli("--quiet realize " + random_sc_file() + " --seed 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"converged\":true") != std::string::npos);
  CHECK(r.output.find("\"residual\"") != std::string::npos);
  CHECK(r.output.find("\"weights\"") != std::string::npos);
  CHECK(r.output.find("\"phases\"") != std::string::npos);
}

TEST_CASE("realize fails loudly when the target is unreachable") {
  // One restart and an impossible residual target: the report must say
  // non-convergence and the exit code must flag the numeric failure.
  const CommandResult r = run_cli("--quiet realize " + random_sc_file() +
                                  " --restarts 1 --tol 1e-30 --seed 4");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("\"converged\":false") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string cmd =
      "--quiet realize " + random_sc_file() + " --seed 12";
  const CommandResult r1 = run_cli(cmd);
  const CommandResult r2 = run_cli(cmd);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(!r1.output.empty());
}

TEST_CASE("seed flag placement and environment fallback agree") {
  const CommandResult flag_before =
      run_cli("--seed 9 discriminate --dim 3");
  const CommandResult flag_after =
      run_cli("discriminate --dim 3 --seed 9");
  const CommandResult via_env = run_command(
      "SCENT_SEED=9 " + kCli + " discriminate --dim 3 2>/dev/null");
  CHECK(flag_before.exit_code == 0);
  CHECK(flag_before.output == flag_after.output);
  CHECK(flag_before.output == via_env.output);
  CHECK(flag_before.output.find("\"seed\":9") != std::string::npos);
}

TEST_CASE("exit codes separate success, bad input, and failed checks") {
  CHECK(run_cli("ree " + random_sc_file()).exit_code == 0);
  CHECK(run_cli("ree " + scratch_file("missing.json")).exit_code == 1);

  const std::string garbage = scratch_file("garbage.json");
  std::ofstream(garbage) << "{\"dim_rows\": oops";
  CHECK(run_cli("ree " + garbage).exit_code == 1);

  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("realize").exit_code == 1);  // missing required argument
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("ree --help").exit_code == 0);

  // A plain non-square-bipartition matrix has no closed form and no
  // oracle route: rejected as bad input.
  const std::string vec = scratch_file("vector.json");
  std::ofstream(vec) << "{\"dim_rows\":3,\"dim_cols\":3,"
                        "\"re\":[[0.5,0,0],[0,0.25,0],[0,0,0.25]],"
                        "\"im\":[[0,0,0],[0,0,0],[0,0,0]]}\n";
  CHECK(run_cli("ree " + vec).exit_code == 1);
}

TEST_CASE("ree reports the closed form and the oracle gap") {
  const CommandResult closed = run_cli("--quiet ree " + bell_sc_file());
  CHECK(closed.exit_code == 0);
  CHECK(std::abs(extract_result(closed.output, "closed_form") - 1.0) <=
        1e-12);
  CHECK(closed.output.find("\"sc_detected\":true") != std::string::npos);

  const CommandResult oracle = run_cli(
      "--quiet ree " + bell_sc_file() +
      " --oracle --terms 8 --restarts 2 --seed 3");
  CHECK(oracle.exit_code == 0);
  CHECK(oracle.output.find("\"oracle_value\"") != std::string::npos);
  CHECK(oracle.output.find("\"gap\"") != std::string::npos);
}

TEST_CASE("additivity certifies tensor pairs of SC files") {
  const CommandResult r = run_cli("--quiet additivity " + bell_sc_file() +
                                  " " + random_sc_file());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"lhs\"") != std::string::npos);
  CHECK(r.output.find("\"rhs\"") != std::string::npos);
  CHECK(r.output.find("\"residual\"") != std::string::npos);

  // Plain matrices without SC structure are rejected as input errors.
  const std::string plain = scratch_file("plain.json");
  std::ofstream(plain) << "{\"dim_rows\":2,\"dim_cols\":2,"
                          "\"re\":[[0.5,0],[0,0.5]],\"im\":[[0,0],[0,0]]}\n";
  // A 2x2 grid is not a perfect-square embedding, so there is no SC read.
  CHECK(run_cli("additivity " + plain + " " + plain).exit_code == 1);
}

TEST_CASE("discriminate certifies the protocol and writes transcripts") {
  const std::string transcripts = scratch_file("transcripts.txt");
  const CommandResult r = run_cli(
      "--quiet discriminate --dim 4 --seed 3 --transcripts " + transcripts);
  CHECK(r.exit_code == 0);
  CHECK(std::abs(extract_result(r.output, "success_probability") - 1.0) <=
        1e-12);
  CHECK(r.output.find("\"residual_states_product\":true") !=
        std::string::npos);

  std::ifstream in(transcripts);
  std::string first_line;
  REQUIRE(std::getline(in, first_line));
  CHECK(first_line.rfind("branch=0 hidden=0", 0) == 0);

  const CommandResult sampled = run_cli(
      "--quiet discriminate --dim 3 --mode sampled --trials 64 --seed 5");
  CHECK(sampled.exit_code == 0);
  const CommandResult sampled2 = run_cli(
      "--quiet discriminate --dim 3 --mode sampled --trials 64 --seed 5");
  CHECK(sampled.output == sampled2.output);
}

TEST_CASE("distill certifies the two-Bell-state family via file input") {
  const CommandResult r = run_cli("--quiet distill " + bell_family_file());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"lower_bound\"") != std::string::npos);
  CHECK(r.output.find("\"upper_bound\"") != std::string::npos);
  CHECK(std::abs(extract_result(r.output, "distillable") - 1.0) <= 1e-12);
}

TEST_CASE("realize accepts an embedded pair-basis state file") {
  // The 4x4 embedding of Bell coefficients realizes directly: the two
  // off-pair indices carry no weight.
  ComplexMatrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  const std::string path = scratch_file("bell_embedded.json");
  save_matrix_file(path,
                   embed(SchmidtCorrelatedState(std::move(half))).matrix());
  const CommandResult r = run_cli("--quiet realize " + path + " --seed 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"converged\":true") != std::string::npos);
}

}  // TEST_SUITE
