#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(D4SYL_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("d4syl_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("info").code, 2);
  EXPECT_EQ(run("info -q 4").code, 2);
  EXPECT_EQ(run("info -q 12").code, 2);
  EXPECT_EQ(run("info -q 9 -p 5").code, 2);
  EXPECT_EQ(run("info -q 3 --g 0,2,0,1").code, 2);
  EXPECT_EQ(run("info -q 3 --f x").code, 2);
  EXPECT_EQ(run("table -q 3 -o out.txt").code, 2);
  EXPECT_EQ(run("table -q 3").code, 2);
}

TEST(Cli, Info) {
  const CliResult r = run("info -q 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("p: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("classes: 609\n"), std::string::npos);
  EXPECT_NE(r.out.find("degree 81: 54\n"), std::string::npos);
  EXPECT_NE(r.out.find("eta: "), std::string::npos);
  EXPECT_NE(r.out.find("theta: "), std::string::npos);
  EXPECT_EQ(run("info -p 3 -k 2").code, 0);
}

TEST(Cli, Classes) {
  const CliResult r = run("classes -q 3");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 609u);
  EXPECT_EQ(j[0]["family"], "Identity");
  EXPECT_EQ(j[0]["size"], 1);
  std::uint64_t mass = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    EXPECT_EQ(j[i]["index"], i);
    mass += j[i]["size"].get<std::uint64_t>();
  }
  EXPECT_EQ(mass, 531441u);
  EXPECT_EQ(run("classes -q 3 --check-census").code, 0);
  EXPECT_EQ(run("classes -q 5 --check-census").code, 2);
}

TEST(Cli, TableJson) {
  const auto path = scratch("t.json");
  ASSERT_EQ(run("table -q 3 -o " + path.string()).code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  std::filesystem::remove(path);
  EXPECT_EQ(j["schema"], 1);
  for (const char* key : {"p", "k", "f", "g", "eta", "theta"}) EXPECT_TRUE(j["metadata"].contains(key)) << key;
  EXPECT_EQ(j["metadata"]["p"], 3);
  ASSERT_EQ(j["classes"].size(), 609u);
  ASSERT_EQ(j["characters"].size(), 609u);
  ASSERT_EQ(j["values"].size(), 609u);
  for (const auto& row : j["values"]) ASSERT_EQ(row.size(), 609u);
  // Trivial row, and degrees down the identity column.
  for (const auto& cell : j["values"][0]) EXPECT_EQ(cell, nlohmann::json::array({1, 0}));
  for (std::size_t r = 0; r < 609; ++r)
    EXPECT_EQ(j["values"][r][0], nlohmann::json::array({j["characters"][r]["degree"], 0}));
}

TEST(Cli, TableCsv) {
  const auto path = scratch("t.csv");
  ASSERT_EQ(run("table -q 3 -o " + path.string()).code, 0);
  std::ifstream in(path);
  std::string line;
  std::size_t comments = 0, rows = 0;
  bool saw_eta = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++comments;
      saw_eta = saw_eta || line.rfind("# eta=", 0) == 0;
    } else {
      ++rows;
    }
  }
  std::filesystem::remove(path);
  EXPECT_TRUE(saw_eta);
  EXPECT_EQ(comments, 8u);
  EXPECT_EQ(rows, 611u);
}

TEST(Cli, TableHonoursCustomPolynomials) {
  const auto path = scratch("g.json");
  ASSERT_EQ(run("table -p 3 -k 1 --g 1,2,0,1 -o " + path.string()).code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  std::filesystem::remove(path);
  EXPECT_EQ(j["metadata"]["g"], nlohmann::json::array({1, 2, 0, 1}));
}

TEST(Cli, VerifyAtThree) {
  const CliResult r = run("verify -q 3 --oracles");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("PASS  row orthogonality  [185745 pairs]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS  class census"), std::string::npos);
}

TEST(Cli, VerifySampledAtFive) {
  const CliResult r = run("verify -q 5 --oracles --seed 3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("(sampled, seed 3)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("SKIP  oracles"), std::string::npos) << r.out;
}
