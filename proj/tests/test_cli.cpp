#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qsu2/cli.hpp"

using namespace qsu2;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/qsu2_test_") + name;
}

}  // namespace

TEST_CASE("k range parsing") {
  CHECK(parse_k_range("5") == std::vector<std::int64_t>{5});
  CHECK(parse_k_range("1..4") == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(parse_k_range("256,1024,4096") == std::vector<std::int64_t>{256, 1024, 4096});
  CHECK_THROWS_AS(parse_k_range("4..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_k_range("abc"), std::invalid_argument);
}

TEST_CASE("float serialization uses 17 significant digits") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.5e-10) == "-2.5000000000000002e-10");
}

TEST_CASE("six-j command output") {
  RunConfig config;
  config.command = "six-j";
  config.r = 5;
  config.boundary = {1, 1, 1, 1};
  config.out_path = temp_path("sixj.json");
  std::ostringstream diag;
  REQUIRE(run(config, diag) == 0);
  std::string text = slurp(config.out_path);
  CHECK(text.find("\"row_labels\":[0,2]") != std::string::npos);
  CHECK(text.find("0.6180339887498949") != std::string::npos);
  CHECK(text.find("-0.6180339887498949") != std::string::npos);
  std::remove(config.out_path.c_str());
}

TEST_CASE("gap-sweep csv shape contract") {
  RunConfig config;
  config.command = "gap-sweep";
  config.family = "torus";
  config.k_values = parse_k_range("1..5");
  config.format = "csv";
  config.out_path = temp_path("sweep.csv");
  std::ostringstream diag;
  REQUIRE(run(config, diag) == 0);
  std::string text = slurp(config.out_path);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,r,dim,lambda_min,max_disp,fixed_dim");
  int data_rows = 0, comments = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') ++comments;
    else ++data_rows;
  }
  CHECK(data_rows == 5);
  CHECK(comments >= 3);  // trailing metadata block
  std::remove(config.out_path.c_str());
}

TEST_CASE("invalid configurations exit 2 without output") {
  std::ostringstream diag;
  RunConfig config;
  config.command = "six-j";
  config.r = 5;
  config.boundary = {1, 1, 1};  // wrong arity
  config.out_path = temp_path("never.json");
  CHECK(run(config, diag) == 2);
  std::ifstream probe(config.out_path);
  CHECK_FALSE(probe.good());

  RunConfig bad;
  bad.command = "unknown";
  CHECK(run(bad, diag) == 2);

  RunConfig badexp;
  badexp.command = "sphere-rep";
  badexp.r = 25;
  badexp.f_exponent = 0.7;
  CHECK(run(badexp, diag) == 2);

  RunConfig badfam;
  badfam.command = "gap-sweep";
  badfam.family = "nope";
  badfam.k_values = {1};
  CHECK(run(badfam, diag) == 2);

  RunConfig bigk;
  bigk.command = "torus-rep";
  bigk.k_values = {2000};
  CHECK(run(bigk, diag) == 2);
}

TEST_CASE("default output directory comes from the environment") {
  setenv("QSU2_OUT_DIR", "/tmp", 1);
  RunConfig config;
  config.command = "six-j";
  config.r = 5;
  config.boundary = {0, 0, 0, 0};
  std::ostringstream diag;
  REQUIRE(run(config, diag) == 0);
  unsetenv("QSU2_OUT_DIR");
  std::string text = slurp("/tmp/six-j.json");
  CHECK(text.find("\"matrix\":[[1]]") != std::string::npos);
  std::remove("/tmp/six-j.json");
}

TEST_CASE("io failure exits 3") {
  RunConfig config;
  config.command = "six-j";
  config.r = 5;
  config.boundary = {1, 1, 1, 1};
  config.out_path = "/nonexistent_dir/qsu2.json";
  std::ostringstream diag;
  CHECK(run(config, diag) == 3);
}

TEST_CASE("identical configs give byte-identical output") {
  for (const char* cmd : {"factor-check", "gap-sweep"}) {
    RunConfig config;
    config.command = cmd;
    config.seed = 1234;
    if (config.command == "factor-check") {
      config.prime = 3;
      config.trials = 150;
      config.max_word_length = 25;
      config.tol = 1e-8;
    } else {
      config.family = "m04_tensor";
      config.k_values = {23, 48};
      config.format = "csv";
    }
    std::ostringstream diag;
    config.out_path = temp_path("det_a");
    REQUIRE(run(config, diag) == 0);
    std::string a = slurp(config.out_path);
    config.out_path = temp_path("det_b");
    REQUIRE(run(config, diag) == 0);
    std::string b = slurp(config.out_path);
    CHECK(a == b);
    CHECK(!a.empty());
    std::remove(temp_path("det_a").c_str());
    std::remove(temp_path("det_b").c_str());
  }
}

TEST_CASE("converge command emits continuous block and rows") {
  RunConfig config;
  config.command = "converge";
  config.function_name = "hermite1";
  config.k_values = {64, 128};
  config.quad_step = 1.0 / 128.0;  // keep the unit test quick
  config.out_path = temp_path("conv.json");
  std::ostringstream diag;
  REQUIRE(run(config, diag) == 0);
  std::string text = slurp(config.out_path);
  CHECK(text.find("\"continuous\"") != std::string::npos);
  CHECK(text.find("\"gap_s\"") != std::string::npos);
  CHECK(text.find("\"k\":64") != std::string::npos);
  CHECK(text.find("\"k\":128") != std::string::npos);
  std::remove(config.out_path.c_str());
}

TEST_CASE("factor-check json carries the contract fields") {
  RunConfig config;
  config.command = "factor-check";
  config.prime = 3;
  config.trials = 100;
  config.max_word_length = 20;
  config.tol = 1e-8;
  config.out_path = temp_path("fc.json");
  std::ostringstream diag;
  REQUIRE(run(config, diag) == 0);
  std::string text = slurp(config.out_path);
  for (const char* field : {"\"p\":", "\"candidates\":", "\"max_proj_distance_per_candidate\":",
                            "\"reported_level\":", "\"t_projective_order\":"})
    CHECK(text.find(field) != std::string::npos);
  std::remove(config.out_path.c_str());
}
