// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "widom/cli.hpp"

using namespace widom::cli;
using doctest::Approx;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_text(const std::string& command, const std::string& descriptor, Format f = Format::Json) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / ("widom_cli_test_" + command + ".json");
  std::ofstream(path) << descriptor;
  Invocation inv;
  inv.command = command;
  inv.config = path.string();
  inv.format = f;
  std::ostringstream out, err;
  const int code = execute(inv, out, err);
  std::filesystem::remove(path);
  return {code, out.str(), err.str()};
}

const char* kUnit3 = R"({"bands": [[-1, 1]], "weight": "unit", "x_star": "inf", "n": 3})";
const char* kRecip8 =
    R"({"bands": [[-1, 1]], "weight": {"type": "recip_poly", "coefficients": [-3, 1]}, "x_star": "inf", "n": 8})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("solve on [-1, 1] gives t_3 = 0.25") {
    const auto r = run_text("solve", kUnit3);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["solution"]["t"].get<double>() == Approx(0.25).epsilon(1e-14));
    CHECK(j["alternation"]["pass"].get<bool>());
  }

  TEST_CASE("output is deterministic") {
    CHECK(run_text("solve", kUnit3).out == run_text("solve", kUnit3).out);
    CHECK(run_text("bounds", kRecip8).out == run_text("bounds", kRecip8).out);
  }

  TEST_CASE("bounds CSV row") {
    const auto r = run_text("bounds", kRecip8, Format::Csv);
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "n,t_n,W_n,S,sharp_lb,ub,pass_lb,pass_ub");
    CHECK(row.rfind("8,", 0) == 0);
    CHECK(row.find(",true,true") != std::string::npos);
  }

  TEST_CASE("solution round trip skips the solve and gives the same report") {
    const auto solved = nlohmann::json::parse(run_text("solve", kRecip8).out);
    auto d = nlohmann::json::parse(kRecip8);
    d["solution"] = solved["solution"];
    const auto direct = run_text("bounds", kRecip8);
    const auto reused = run_text("bounds", d.dump());
    REQUIRE(reused.code == 0);
    CHECK(direct.out == reused.out);
    const auto en = run_text("enset", d.dump());
    REQUIRE(en.code == 0);
    CHECK(nlohmann::json::parse(en.out)["cosh"]["pass"].get<bool>());
  }

  TEST_CASE("floats use 17 significant digits") {
    Json j;
    j["x"] = 0.1;
    j["y"] = std::numeric_limits<double>::infinity();
    j["k"] = 3;
    CHECK(dump_json(j) == "{\"x\":0.10000000000000001,\"y\":\"inf\",\"k\":3}\n");
  }

  TEST_CASE("input errors exit with status 2 and a path") {
    auto r = run_text("solve", R"({"weight": "unit", "n": 3})");
    CHECK(r.code == 2);
    CHECK(r.err.find("/bands") != std::string::npos);
    r = run_text("solve", R"({"bands": [[-1, 1]], "weight": {"type": "semicircle"}, "n": 3})");
    CHECK(r.code == 2);
    CHECK(r.err.find("/weight/arcs") != std::string::npos);
    r = run_text("solve", R"({"bands": [[-1, 1], [0, 2]], "n": 3})");
    CHECK(r.code == 2);
    CHECK(r.err.find("/bands") != std::string::npos);
    r = run_text("solve", R"({"bands": [[-1, 1]], "x_star": 0.5, "n": 3})");
    CHECK(r.code == 2);
    CHECK(r.err.find("/x_star") != std::string::npos);
    r = run_text("solve", R"({"bands": [[-1, 1]]})");
    CHECK(r.code == 2);
    CHECK(r.err.find("/n") != std::string::npos);
    r = run_text("solve", "{not json");
    CHECK(r.code == 2);
  }

  TEST_CASE("a degree below the threshold is an input error") {
    // n = 1 is below n0 = 2 for 1/|x - 3|.
    const auto r = run_text("enset", R"({"bands": [[-1, 1]], "weight": {"type": "recip_poly", "zeros": [3]}, "n": 1})");
    CHECK(r.code == 2);
    CHECK(r.err.find("build_rational_frame") != std::string::npos);
  }

  TEST_CASE("computation errors exit with status 1") {
    const auto r = run_text("solve", R"({"bands": [[-1, -0.2], [0.4, 1]], "n": 9, "options": {"max_iter": 1}})");
    CHECK(r.code == 1);
    CHECK(r.err.find("solve_extremal") != std::string::npos);
  }

  TEST_CASE("every command runs") {
    const char* d =
        R"({"bands": [[-1, -0.6], [0.6, 1]], "weight": "unit", "x_star": "inf", "n": 4, "n_range": [2, 5], "points": [0, 2]})";
    for (auto c : kCommands) {
      const auto r = run_text(std::string(c), d, Format::Both);
      CHECK_MESSAGE(r.code == 0, c, ": ", r.err);
    }
  }
}
