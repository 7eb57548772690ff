// Copyright 2026 The quadqc Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support.hpp"

using quadqc::testing::fixture_path;

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "quadqc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = quadqc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("quadqc_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("dj classifies and writes CSVs") {
  const auto dir = scratch("dj");
  auto r = run({"dj", "--oracle", "f3", "--method", "quad-evolution", "--out-dir", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out == "balanced\n");
  CHECK(fs::exists(dir / "dj_f3_quad-evolution_spectrum.csv"));
  const std::string peaks = slurp(dir / "dj_f3_quad-evolution_peaks.csv");
  CHECK(peaks.rfind("transition,integral,sign\n00-01,", 0) == 0);

  r = run({"dj", "--oracle", "f1", "--method", "selective-z", "--out-dir", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out == "constant\n");

  r = run({"dj", "--out-dir", dir.string(), "--relax"});
  CHECK(r.status == 0);
  CHECK(r.out.find("f4 quad-evolution balanced") != std::string::npos);
  CHECK(r.out.find("f2 ideal-matrix constant") != std::string::npos);
}

TEST_CASE("bad configuration exits 1 with a code") {
  auto r = run({"dj", "--oracle", "f9"});
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error[E_INVALID_ARGUMENT]", 0) == 0);
  r = run({"dj", "--method", "quantum"});
  CHECK(r.status == 1);
  r = run({"frobnicate"});
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error[E_USAGE]", 0) == 0);
  r = run({"equilibrium", "--points", "1000"});
  CHECK(r.status == 1);
  r = run({"dj", "--t1", "-1"});
  CHECK(r.status == 1);
}

TEST_CASE("outputs are deterministic") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  CHECK(run({"equilibrium", "--out-dir", a.string()}).status == 0);
  CHECK(run({"equilibrium", "--out-dir", b.string()}).status == 0);
  CHECK(slurp(a / "equilibrium_spectrum.csv") == slurp(b / "equilibrium_spectrum.csv"));
  CHECK(slurp(a / "equilibrium_peaks.csv") == slurp(b / "equilibrium_peaks.csv"));
}

TEST_CASE("equilibrium reports 3:4:3") {
  const auto dir = scratch("eq");
  const auto r = run({"equilibrium", "--out-dir", dir.string()});
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  std::string header, label;
  std::getline(in, header);
  double f, integral, ratio;
  const double expected[] = {3, 4, 3};
  for (double e : expected) {
    in >> label >> f >> integral >> ratio;
    CHECK(ratio == doctest::Approx(e).epsilon(0.01));
  }
}

TEST_CASE("zero splitting warns") {
  const auto dir = scratch("degenerate");
  const auto r = run({"equilibrium", "--splitting", "0", "--out-dir", dir.string()});
  CHECK(r.err.find("warning[W_DEGENERATE]") != std::string::npos);
}

TEST_CASE("pseudopure populations") {
  const auto dir = scratch("pp");
  const auto r = run({"pseudopure", "--out-dir", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out == "00 1.5\n01 -0.5\n11 -0.5\n10 -0.5\n");
  const std::string csv = slurp(dir / "pseudopure_populations.csv");
  CHECK(csv.rfind("level,m,population\n00,1.5,1.5\n", 0) == 0);
}

TEST_CASE("compile-check") {
  const std::string u3 = fixture_path("sequences/u3-quad.qseq");
  auto r = run({"compile-check", u3, "--against", "u3"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("fidelity 1.000000000000\n", 0) == 0);
  CHECK(r.out.find("global_phase_over_pi -0.25") != std::string::npos);

  r = run({"compile-check", fixture_path("sequences/u1-empty.qseq"), "--against", "u1"});
  CHECK(r.status == 0);

  r = run({"compile-check", u3, "--against", "u4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("MISMATCH") != std::string::npos);
  r = run({"compile-check", u3, "--against", "u4", "--strict"});
  CHECK(r.status == 2);

  const auto dir = scratch("matrix");
  std::ofstream(dir / "u3.txt") << "# U3 as a matrix file\n1 0 0 0\n0 1 0 0\n0 0 0 1,0\n0 0 1 0\n";
  r = run({"compile-check", u3, "--against", (dir / "u3.txt").string(), "--strict"});
  CHECK(r.status == 0);

  r = run({"compile-check", fixture_path("invalid/forbidden-transition.qseq"), "--against", "u1"});
  CHECK(r.status == 1);
  CHECK(r.err.find("error[E_FORBIDDEN_TRANSITION]") == 0);
  CHECK(r.err.find(":3:11:") != std::string::npos);

  r = run({"compile-check", fixture_path("sequences/pseudopure.qseq"), "--against", "u1"});
  CHECK(r.status == 1);
  CHECK(r.err.find("E_NON_UNITARY_SEQUENCE") != std::string::npos);

  r = run({"compile-check", "/nonexistent.qseq", "--against", "u1"});
  CHECK(r.status == 1);
  CHECK(r.err.find("E_IO") != std::string::npos);
}

TEST_CASE("run executes a script") {
  const auto dir = scratch("run");
  auto r = run({"run", fixture_path("sequences/pseudopure.qseq"), "--out-dir", dir.string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("00 1.5 0 0 0") != std::string::npos);
  r = run({"run", fixture_path("sequences/dj-f1.qseq"), "--out-dir", dir.string()});
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "dj-f1_peaks.csv"));
}
