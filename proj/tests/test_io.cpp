#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include <doctest.h>

#include "scent/distill.hpp"
#include "scent/io.hpp"
#include "scent/random.hpp"
#include "scent/states.hpp"

using namespace scent;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "scent_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string scratch_file(const std::string& name) {
  return (scratch_dir() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("matrix files round-trip losslessly") {
  Rng rng(90);
  ComplexMatrix m(3, 4);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rng.normal_complex() * 1e-3;
  m(0, 0) = Complex(1.0 / 3.0, -1e-17);

  const std::string path = scratch_file("matrix.json");
  save_matrix_file(path, m);
  const LoadedState loaded = load_state_file(path);
  CHECK(!loaded.is_sc_file());
  REQUIRE(loaded.matrix.rows() == 3);
  REQUIRE(loaded.matrix.cols() == 4);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      CHECK(loaded.matrix(r, c).real() == m(r, c).real());
      CHECK(loaded.matrix(r, c).imag() == m(r, c).imag());
    }
}

TEST_CASE("SC files round-trip with their declared local dimension") {
  Rng rng(91);
  const SchmidtCorrelatedState sc = random_sc_state(3, rng);
  const std::string path = scratch_file("sc.json");
  save_sc_file(path, sc);
  const LoadedState loaded = load_state_file(path);
  REQUIRE(loaded.is_sc_file());
  CHECK(*loaded.local_dim == 3);
  CHECK((loaded.matrix - sc.coeffs()).norm() == 0.0);
}

TEST_CASE("family files round-trip") {
  Rng rng(92);
  const ComplexMatrix u = random_unitary(2, rng);
  RealVector lambda(3);
  lambda << 0.5, 0.25, 0.25;
  RealMatrix theta(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 3; ++k) theta(i, k) = rng.uniform(-3.0, 3.0);
  const DistillationFamily f(DiscriminationBasis(u), lambda, theta);

  const std::string path = scratch_file("family.json");
  save_family_file(path, f);
  const DistillationFamily g = load_family_file(path);
  CHECK(g.count() == 2);
  CHECK(g.payload_dim() == 3);
  CHECK((g.basis().u() - u).norm() == 0.0);
  CHECK((g.payload_coeffs() - lambda).norm() == 0.0);
  CHECK((g.payload_phases() - theta).norm() == 0.0);
}

TEST_CASE("flat row-major grids are accepted on input") {
  const std::string path = scratch_file("flat.json");
  write_text(path,
             "{\"dim_rows\":2,\"dim_cols\":2,"
             "\"re\":[0.5,0,0,0.5],\"im\":[0,0,0,0]}\n");
  const LoadedState loaded = load_state_file(path);
  CHECK(loaded.matrix(0, 0).real() == 0.5);
  CHECK(loaded.matrix(1, 1).real() == 0.5);
  CHECK(loaded.matrix(0, 1).real() == 0.0);
}

TEST_CASE("malformed documents carry field diagnostics") {
  const std::string path = scratch_file("bad.json");

  write_text(path, "{\"dim_rows\":2,\"dim_cols\":2,\"re\":[[1,0],[0,1]]}\n");
  CHECK_THROWS_WITH_AS(load_state_file(path),
                       doctest::Contains("\"im\""), ParseError);

  write_text(path,
             "{\"dim_rows\":2,\"dim_cols\":2,"
             "\"re\":[[1,0],[0]],\"im\":[[0,0],[0,0]]}\n");
  CHECK_THROWS_AS(load_state_file(path), ParseError);

  write_text(path,
             "{\"dim_rows\":0,\"dim_cols\":2,\"re\":[],\"im\":[]}\n");
  CHECK_THROWS_WITH_AS(load_state_file(path),
                       doctest::Contains("dim_rows"), ParseError);

  write_text(path, "this is not json\n");
  CHECK_THROWS_AS(load_state_file(path), ParseError);

  CHECK_THROWS_AS(load_state_file(scratch_file("does_not_exist.json")),
                  ParseError);

  write_text(path,
             "{\"dim_rows\":2,\"dim_cols\":2,\"local_dim\":3,"
             "\"re\":[[0.5,0],[0,0.5]],\"im\":[[0,0],[0,0]]}\n");
  CHECK_THROWS_WITH_AS(load_state_file(path),
                       doctest::Contains("local_dim"), ParseError);

  write_text(path,
             "{\"N\":2,\"payload_dim\":2,"
             "\"u_re\":[[1,0],[0,1]],\"u_im\":[[0,0],[0,0]],"
             "\"lambda\":[0.5,0.5,0.5],\"theta\":[[0,0],[0,0]]}\n");
  CHECK_THROWS_WITH_AS(load_family_file(path),
                       doctest::Contains("lambda"), ParseError);
}

TEST_CASE("doubles serialize at full precision") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "\"inf\"");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) ==
        "\"-inf\"");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) ==
        "\"nan\"");

  for (double x : {1.0 / 3.0, 0.1, 1e-17, 6.02214076e23, -2.5e-300}) {
    const std::string text = format_double(x);
    CHECK(std::strtod(text.c_str(), nullptr) == x);
  }
}

TEST_CASE("reports serialize deterministically with fixed field order") {
  Report r;
  r.command = "demo";
  r.seed = 42;
  r.input("file", std::string("x.json"));
  r.input("k", static_cast<std::int64_t>(4));
  r.result("residual", 1.5e-9, "norm");
  r.result("weights", std::vector<double>{0.5, 0.5}, "probability");
  r.result("grid", std::vector<std::vector<double>>{{0.0, 1.0}, {2.0, 3.0}},
           "radians");
  r.diagnostic("converged", true);

  const std::string once = to_json(r);
  CHECK(once == to_json(r));

  const auto pos_command = once.find("\"command\":\"demo\"");
  const auto pos_seed = once.find("\"seed\":42");
  const auto pos_inputs = once.find("\"inputs\":{");
  const auto pos_results = once.find("\"results\":{");
  const auto pos_diag = once.find("\"diagnostics\":{");
  REQUIRE(pos_command != std::string::npos);
  REQUIRE(pos_seed != std::string::npos);
  REQUIRE(pos_inputs != std::string::npos);
  REQUIRE(pos_results != std::string::npos);
  REQUIRE(pos_diag != std::string::npos);
  CHECK(pos_command < pos_seed);
  CHECK(pos_seed < pos_inputs);
  CHECK(pos_inputs < pos_results);
  CHECK(pos_results < pos_diag);

  CHECK(once.find("\"residual\":{\"value\":" + format_double(1.5e-9) +
                  ",\"units\":\"norm\"}") != std::string::npos);
  CHECK(once.find("\"weights\":{\"value\":[0.5,0.5],"
                  "\"units\":\"probability\"}") != std::string::npos);
  CHECK(once.find("\"converged\":true") != std::string::npos);
  CHECK(once.back() == '\n');
}

}  // TEST_SUITE
