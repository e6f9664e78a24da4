// Copyright 2026 The conncal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conncal/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "conncal/bounds.hpp"

namespace conncal {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }

  std::string str() const { return path.string(); }
  std::string contents() const {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  std::vector<std::string> lines() const {
    std::ifstream in(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
      out.push_back(line);
    }
    return out;
  }
};

void write_single_node(const std::string& path) {
  std::ofstream out(path);
  out << R"({"nodes":[{"id":"n1","family":"tsirelson","variant":"base"}],)"
      << R"("edges":[],"root":"n1"})";
}

TEST_CASE("parse_angle handles radians and the degree prefix") {
  CHECK(parse_angle("1.5") == doctest::Approx(1.5));
  CHECK(parse_angle("deg:90") == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(parse_angle("-0.25") == doctest::Approx(-0.25));
  CHECK_THROWS_AS(parse_angle("deg:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("abc"), std::invalid_argument);
}

TEST_CASE("parse_selector splits outcome and setting") {
  CHECK(parse_selector("+1,1") == std::pair<int, std::size_t>{+1, 1});
  CHECK(parse_selector("-1,0") == std::pair<int, std::size_t>{-1, 0});
  CHECK(parse_selector("1,3") == std::pair<int, std::size_t>{+1, 3});
  CHECK_THROWS_AS(parse_selector("2,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_selector("+1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_selector("+1,-2"), std::invalid_argument);
}

TEST_CASE("verify succeeds on a sound single-node network") {
  TempFile net("conncal_test_net1.json");
  TempFile out("conncal_test_out1.txt");
  write_single_node(net.str());
  const int code = run_cli({"--out", out.str(), "verify", net.str()});
  CHECK(code == 0);
  CHECK(out.contents().find("pass") != std::string::npos);
}

TEST_CASE("verify exits with 2 on a missing file") {
  const int code = run_cli({"verify", "/nonexistent/conncal_net.json"});
  CHECK(code == 2);
}

TEST_CASE("verify exits with 1 on a non-congruent edge") {
  TempFile net("conncal_test_net2.json");
  TempFile out("conncal_test_out2.txt");
  {
    std::ofstream f(net.str());
    f << R"({"nodes":[{"id":"n1","family":"tsirelson","variant":"aligned"},)"
      << R"({"id":"n2","family":"tsirelson","variant":"base"}],)"
      << R"("edges":[{"from":"n1","to":"n2","leg":1}],"root":"n2"})";
  }
  const int code = run_cli({"--out", out.str(), "verify", net.str()});
  CHECK(code == 1);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"sweep", "unknown-tag"}) == 2);
  CHECK(run_cli(std::vector<std::string>{}) == 2);
}

TEST_CASE("bounds emits one CSV row with header") {
  TempFile net("conncal_test_net3.json");
  TempFile out("conncal_test_out3.txt");
  write_single_node(net.str());
  const int code = run_cli({"--out", out.str(), "bounds", net.str()});
  CHECK(code == 0);
  const auto lines = out.lines();
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "parties,classical,ns,quantum_witness,gamma_bound");
  std::istringstream row(lines[1]);
  std::string cell;
  std::getline(row, cell, ',');
  CHECK(cell == "2");
  std::getline(row, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(1.0 / kSqrt2).epsilon(1e-12));
}

TEST_CASE("bounds respects the component override") {
  TempFile net("conncal_test_net4.json");
  TempFile out("conncal_test_out4.txt");
  write_single_node(net.str());
  const int code = run_cli({"--out", out.str(), "bounds", net.str(), "--y", "0"});
  CHECK(code == 0);
  const auto lines = out.lines();
  REQUIRE(lines.size() == 2);
}

TEST_CASE("bounds JSON output carries the same figures") {
  TempFile net("conncal_test_net5.json");
  TempFile out("conncal_test_out5.json");
  write_single_node(net.str());
  const int code = run_cli({"--json", "--out", out.str(), "bounds", net.str()});
  CHECK(code == 0);
  const json j = json::parse(out.contents());
  CHECK(j.at("parties").get<int>() == 2);
  CHECK(j.at("quantum_witness").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sweep emits one row per chain length") {
  TempFile out("conncal_test_out6.csv");
  const int code =
      run_cli({"--out", out.str(), "sweep", "bk-chain", "--from", "2", "--to", "4"});
  CHECK(code == 0);
  const auto lines = out.lines();
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "param,parties,classical,ns,quantum_witness,gamma_bound");
  CHECK(lines[1].rfind("2,2,", 0) == 0);
  CHECK(lines[3].rfind("4,4,", 0) == 0);
}

TEST_CASE("an empty sweep range yields only the header") {
  TempFile out("conncal_test_out7.csv");
  const int code =
      run_cli({"--out", out.str(), "sweep", "bk-chain", "--from", "5", "--to", "4"});
  CHECK(code == 0);
  const auto lines = out.lines();
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == "param,parties,classical,ns,quantum_witness,gamma_bound");
}

TEST_CASE("angle sweeps accept degree-prefixed bounds") {
  TempFile out("conncal_test_out8.csv");
  const int code = run_cli({"--out", out.str(), "sweep", "wbc-3p", "--from", "deg:80",
                            "--to", "deg:100", "--step", "deg:10"});
  CHECK(code == 0);
  const auto lines = out.lines();
  REQUIRE(lines.size() == 4);
  std::istringstream row(lines[2]);
  std::string cell;
  std::getline(row, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("state prints the documented amplitudes") {
  TempFile net("conncal_test_net9.json");
  TempFile out("conncal_test_out9.csv");
  write_single_node(net.str());
  const int code = run_cli({"--out", out.str(), "state", net.str(), "--selector", "+1,1"});
  CHECK(code == 0);
  const auto lines = out.lines();
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "re,im");
  std::istringstream first(lines[1]);
  std::string re, im;
  std::getline(first, re, ',');
  std::getline(first, im, ',');
  CHECK(std::stod(re) == doctest::Approx(1.0 / kSqrt2).epsilon(1e-9));
  CHECK(std::stod(im) == doctest::Approx(0.0));
  std::istringstream second(lines[2]);
  std::getline(second, re, ',');
  CHECK(std::stod(re) == doctest::Approx(0.0));
}

TEST_CASE("state JSON reports a zero expectation for the complementary selector") {
  TempFile net("conncal_test_net10.json");
  TempFile out("conncal_test_out10.json");
  write_single_node(net.str());
  int code = run_cli({"--json", "--out", out.str(), "state", net.str(), "--selector",
                      "-1,1", "--target", "0"});
  CHECK(code == 0);
  json j = json::parse(out.contents());
  CHECK(j.at("expectation").get<double>() == doctest::Approx(0.0).epsilon(1e-9));

  code = run_cli({"--json", "--out", out.str(), "state", net.str(), "--selector", "+1,1"});
  CHECK(code == 0);
  j = json::parse(out.contents());
  CHECK(j.at("expectation").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(run_cli({"state", net.str(), "--selector", "+1,7"}) == 2);
}

TEST_CASE("state mps format emits factor blocks for a chain") {
  TempFile out("conncal_test_out11.csv");
  const json net = {
      {"nodes",
       {{{"id", "n1"}, {"family", "tsirelson"}, {"variant", "aligned"}},
        {{"id", "n2"}, {"family", "tsirelson"}, {"variant", "aligned"}}}},
      {"edges", {{{"from", "n1"}, {"to", "n2"}, {"leg", 1}}}},
      {"root", "n2"},
  };
  TempFile netf("conncal_test_net11.json");
  {
    std::ofstream f(netf.str());
    f << net.dump();
  }
  const int code = run_cli({"--out", out.str(), "state", netf.str(), "--format", "mps"});
  CHECK(code == 0);
  const auto lines = out.lines();
  CHECK(lines[0] == "site,outcome,row,col,re,im");
  CHECK(lines.size() == 1 + 4 + 8 + 4);
}

TEST_CASE("state mps rejects non-chain networks with exit 2") {
  TempFile net("conncal_test_net12.json");
  {
    std::ofstream f(net.str());
    f << wbc4_network(1.3).to_json().dump();
  }
  CHECK(run_cli({"state", net.str(), "--format", "mps"}) == 2);
  CHECK(run_cli({"state", net.str(), "--selector", "bogus"}) == 2);
}

TEST_CASE("build emits a network the other commands accept") {
  TempFile built("conncal_test_net13.json");
  int code = run_cli({"--out", built.str(), "build", "tsirelson", "--variant", "aligned"});
  CHECK(code == 0);
  const json j = json::parse(built.contents());
  CHECK(j.at("root").get<std::string>() == "n1");
  CHECK(j.at("nodes").size() == 1);

  TempFile out("conncal_test_out13.txt");
  code = run_cli({"--out", out.str(), "verify", built.str()});
  CHECK(code == 0);
}

TEST_CASE("build forwards angles and graph shorthands") {
  TempFile built("conncal_test_net14.json");
  int code = run_cli({"--out", built.str(), "build", "tilted", "--theta", "deg:30"});
  CHECK(code == 0);
  json j = json::parse(built.contents());
  CHECK(j.at("nodes").at(0).at("params").at("theta").get<double>() ==
        doctest::Approx(kPi / 6).epsilon(1e-14));

  TempFile star("conncal_test_net15.json");
  code = run_cli({"--out", star.str(), "build", "basta", "--star", "4"});
  CHECK(code == 0);
  j = json::parse(star.contents());
  CHECK(j.at("nodes").at(0).at("params").at("graph").at("q").get<int>() == 4);

  CHECK(run_cli({"build", "tilted", "--theta", "2.0"}) == 2);
}

TEST_CASE("deterministic output across repeated runs") {
  TempFile out1("conncal_test_out16a.csv");
  TempFile out2("conncal_test_out16b.csv");
  CHECK(run_cli({"--out", out1.str(), "sweep", "bk-chain", "--from", "2", "--to", "5"}) == 0);
  CHECK(run_cli({"--threads", "4", "--out", out2.str(), "sweep", "bk-chain", "--from", "2",
                 "--to", "5"}) == 0);
  CHECK(out1.contents() == out2.contents());
  CHECK_FALSE(out1.contents().empty());
}

}  // namespace
}  // namespace conncal
