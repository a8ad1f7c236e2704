// Copyright 2026 The qswiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef QSWISO_CLI_PATH
#error "QSWISO_CLI_PATH must name the CLI binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" QSWISO_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qswiso_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("spectrum: JSON envelope") {
  const auto r = run("spectrum --graph named:path:3 --omega 0.5");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["version"].is_string());
  CHECK(j["config"]["command"] == "spectrum");
  CHECK(j["config"]["omega"] == 0.5);
  CHECK(j["config"]["graph6"] == "Bg");
  CHECK(j["values"].size() == 9);
  CHECK(j["n"] == 3);
}

TEST_CASE("graph inputs: graph6 file and edge-list JSON") {
  const auto g6 = scratch("p4.g6");
  std::ofstream(g6) << "\nCh\n";
  const auto el = scratch("p4.json");
  std::ofstream(el) << R"({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]})";
  const auto a = run("compare --g1 " + g6.string() + " --g2 " + el.string() + " --omega 0.5");
  CHECK(a.code == 0);
  CHECK(json::parse(a.out)["distinguished"] == false);
}

TEST_CASE("compare: exit code carries the verdict") {
  CHECK(run("compare --g1 named:path:4 --g2 named:star:4 --omega 0").code == 1);
  CHECK(run("compare --g1 named:path:4 --g2 named:path:4 --omega 0.3").code == 0);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("spectrum --graph named:path:3 --bogus").code == 2);
  CHECK(run("spectrum --graph C").code == 2);
  CHECK(run("spectrum --graph " + scratch("missing.g6").string()).code == 2);
  CHECK(run("spectrum --graph named:path:3 --omega 1.5").code == 2);
  CHECK(run("simulate --graph named:path:3 --edge 1,2").code == 2);
  CHECK(run("simulate --graph named:path:3 --edge 0,2").code == 2);
  CHECK(run("simulate --graph named:path:3 --edge 1,3 --dt -1").code == 2);
  CHECK(run("sweep --g1 named:path:4 --g2 named:star:4 --omega-grid 0:1").code == 2);
  CHECK(run("spectrum --graph named:path:3 --format xml").code == 2);
}

TEST_CASE("reconstruct: singular systems exit with 3, the visible factor succeeds") {
  CHECK(run("reconstruct --graph named:path:3 --edge 1,3 --omega 0.5").code == 3);
  const auto r = run("reconstruct --graph named:path:3 --edge 1,3 --omega 0.5 --visible-factor");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["partial"] == true);
  CHECK(j["delta"].get<double>() < 1e-8);
  CHECK(j["config"]["edge"].is_string());
}

TEST_CASE("simulate: CSV with sidecar, reproducible in the seed") {
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  const std::string args = "simulate --graph named:path:3 --edge 1,3 --omega 0.5 --epsilon 0.05 --dt 10 "
                           "--windows 300 --seed 5 --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string(), "QSWISO_THREADS=1").code == 0);
  const auto text = slurp(a);
  CHECK(text.rfind("window,count\n", 0) == 0);
  CHECK(text == slurp(b));
  int lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 301);
  const auto side = json::parse(slurp(fs::path(a.string() + ".json")));
  CHECK(side["config"]["seed"] == 5);
  CHECK(side["config"]["windows"] == 300);
  CHECK(side["config"]["burn_in"].get<double>() > 0.0);
  CHECK(side["version"].is_string());
  CHECK_FALSE(side.contains("counts"));

  const auto stdout_run = run("simulate --graph named:path:3 --edge 1,3 --omega 0.5 --epsilon 0.05 --dt 10 "
                              "--windows 300 --seed 5");
  CHECK(stdout_run.out == text);
}

TEST_CASE("sweep: CSV and JSON") {
  const auto csv = run("sweep --g1 named:path:4 --g2 named:star:4 --omega-grid 0:1:11");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("omega,delta\n", 0) == 0);
  int lines = 0;
  for (char c : csv.out) lines += c == '\n';
  CHECK(lines == 12);
  const auto js = run("sweep --g1 named:path:4 --g2 named:star:4 --omega-grid 0:1:11 --format json");
  REQUIRE(js.code == 0);
  const auto j = json::parse(js.out);
  CHECK(j["config"]["omega_grid"] == "0:1:11");
}

TEST_CASE("search-cospectral over a generated catalog") {
  const auto r = run("search-cospectral --generate 6 --invariants L", "QSWISO_THREADS=1");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["config"]["threads"] == 1);
  CHECK(j["violations"].empty());
  bool found = false;
  for (const auto& p : j["pairs"])
    if (p["graph6"] == json::array({"ECZo", "ECz_"}) || p["graph6"] == json::array({"ECz_", "ECZo"})) found = true;
  CHECK(found);
}

TEST_CASE("cumulants and catalog commands") {
  const auto c = run("cumulants --graph named:path:3 --edge 1,3 --omega 0.5 --order 6");
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["cumulants"].size() == 6);
  const auto cat = run("catalog --n 5");
  REQUIRE(cat.code == 0);
  int lines = 0;
  for (char ch : cat.out) lines += ch == '\n';
  CHECK(lines == 21);
}
