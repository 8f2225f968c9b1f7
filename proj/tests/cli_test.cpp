#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Outcome run(const std::string& args) {
  const std::string cmd = std::string(SLANTGEOM_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SLANTGEOM_DATA) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "slantgeom_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, CheckStructure) {
  const Outcome ok = run("check-structure " + data("example1.manifest") + " --samples 30");
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_NE(ok.out.find("generic-normal"), std::string::npos) << ok.out;
  const Outcome flat = run("check-structure " + data("flat.manifest") + " --json -");
  EXPECT_EQ(flat.status, 0) << flat.out;
  const auto j = nlohmann::json::parse(flat.out);
  EXPECT_EQ(j.at("class"), "paracosymplectic");
  EXPECT_TRUE(j.at("passed").get<bool>());
}

TEST(Cli, BadInputExitsWithTwo) {
  const auto bad = scratch("bad.manifest");
  {
    std::ifstream in(data("flat.manifest"));
    std::stringstream text;
    text << in.rdbuf();
    std::string s = text.str();
    const auto at = s.find("g11 = -1");
    ASSERT_NE(at, std::string::npos);
    s.insert(at + 8, " +");
    const auto line = 1 + std::count(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(at), '\n');
    std::ofstream(bad) << s;
    const Outcome r = run("check-structure " + bad.string());
    EXPECT_EQ(r.status, 2) << r.out;
    EXPECT_NE(r.out.find(std::to_string(line) + ":"), std::string::npos) << r.out;
  }
  EXPECT_EQ(run("check-structure /nonexistent.manifest").status, 2);
  EXPECT_EQ(run("curve-report " + data("example1.manifest") + " nope --at 1").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("check-structure " + data("example1.manifest") + " --samples -3").status, 2);
}

TEST(Cli, CurveReport) {
  const Outcome r = run("curve-report " + data("example1.manifest") + " a --at -1 --json -");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("epsilon1"), -1);
  const auto& p = j.at("points").at(0);
  EXPECT_EQ(p.at("regime"), "frenet-order-3");
  EXPECT_NEAR(p.at("frenet").at("kappa").get<double>(), std::sqrt(2.5), 1e-10);
  EXPECT_NEAR(p.at("frenet").at("tau").get<double>(), 1.5, 1e-10);

  const Outcome grid = run("curve-report " + data("flat.manifest") + " null --grid 0,1,3 --json -");
  ASSERT_EQ(grid.status, 0) << grid.out;
  const auto g = nlohmann::json::parse(grid.out);
  ASSERT_EQ(g.at("points").size(), 3u);
  for (const auto& q : g.at("points")) EXPECT_NEAR(q.at("null_cartan").at("tau").get<double>(), -2.0, 1e-10);

  // outside the curve's interval: a point error, exit 1
  EXPECT_EQ(run("curve-report " + data("example1.manifest") + " a --at 1").status, 1);
}

TEST(Cli, VerifyPaperReportsTheDisplayMismatches) {
  const auto out = scratch("verify.json");
  const Outcome r = run("verify-paper --samples 30 --json " + out.string());
  EXPECT_EQ(r.status, 1) << r.out;
  for (int i = 1; i <= 12; ++i) EXPECT_NE(r.out.find("AC-" + std::to_string(i)), std::string::npos);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("criteria").size(), 12u);
  EXPECT_FALSE(j.at("passed").get<bool>());
}

TEST(Cli, DumpRoundTrips) {
  const Outcome d = run("dump example2");
  ASSERT_EQ(d.status, 0) << d.out;
  const auto path = scratch("ex2.manifest");
  std::ofstream(path) << d.out;
  EXPECT_EQ(run("check-structure " + path.string() + " --samples 20").status, 0);
}
