#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_runner.hpp"

TEST(Cli, CleanVerifyExitsZero) {
  const CliRun r = run_cli("verify --theorems lemma_amgm,choi --dims 2,3 --samples 20 --quiet");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS: 0 violation(s)"), std::string::npos);
}

TEST(Cli, ViolationExitsOne) {
  const CliRun r = run_cli("verify --theorems kantorovich_product --dims 2 --samples 200 --params 1,3,3 --quiet");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("FAIL:"), std::string::npos);
}

TEST(Cli, SearchExceedanceExitsTwo) {
  EXPECT_EQ(run_cli("search --theorem kantorovich_product --params 1,3,3 --budget 400").status, 2);
  EXPECT_EQ(run_cli("search --theorem kantorovich --bound classical --params 1,4 --budget 400").status, 0);
}

TEST(Cli, UsageErrorsExitSixtyFour) {
  EXPECT_EQ(run_cli("verify --samples 0").status, 64);
  EXPECT_EQ(run_cli("verify --dims 2,x").status, 64);
  EXPECT_EQ(run_cli("frobnicate").status, 64);
  EXPECT_EQ(run_cli("verify --theorems nope --samples 5").status, 64);
  EXPECT_EQ(run_cli("").status, 64);
}

TEST(Cli, InfeasibleParametersExitSixtyFive) {
  EXPECT_EQ(run_cli("verify --theorems lemma_amgm --params 0.5,4 --samples 5").status, 65);
  EXPECT_EQ(run_cli("constants --m 4 --M 1").status, 65);
}

TEST(Cli, ConstantsJson) {
  const CliRun r = run_cli("constants --m 1 --mp 2 --Mp 8 --M 16 --json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& row : j.at("rows")) {
    if (row.at("name") == "lin_squared") {
      found = true;
      EXPECT_NEAR(row.at("classical").get<double>() / row.at("refined").get<double>(), 1.538162, 1e-6);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, ReportFilesWritten) {
  const std::string json = testing::TempDir() + "cli_report.json";
  const std::string csv = testing::TempDir() + "cli_report.csv";
  const CliRun r = run_cli("verify --theorems wielandt_gumus --dims 4 --samples 10 --quiet --out " + json +
                           " --csv " + csv);
  ASSERT_EQ(r.status, 0);
  std::ifstream in(json);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j.at("meta").at("master_seed"), 42);
  EXPECT_EQ(j.at("results").size(), 2u);
  std::ifstream c(csv);
  std::string line;
  int lines = 0;
  while (std::getline(c, line)) ++lines;
  EXPECT_EQ(lines, 3);
  std::remove(json.c_str());
  std::remove(csv.c_str());
}

TEST(Cli, SeedFromEnvironment) {
  const CliRun a = run_cli("verify --theorems choi --dims 2 --samples 5 --quiet --out /dev/stdout");
  const std::string cmd = std::string("env OPINEQ_SEED=7 ") + OPINEQ_CLI;
  FILE* pipe = popen((cmd + " verify --theorems choi --dims 2 --samples 5 --quiet --out /dev/stdout").c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  EXPECT_NE(a.out.find("\"master_seed\": 42"), std::string::npos);
  EXPECT_NE(out.find("\"master_seed\": 7"), std::string::npos);
}
