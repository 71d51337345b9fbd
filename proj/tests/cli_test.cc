// End-to-end checks of the command-line tool: subcommands, exit codes and
// the machine-readable JSON it prints.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#ifndef SPDMEANS_CLI_PATH
#define SPDMEANS_CLI_PATH "spdmeans"
#endif
#ifndef SPDMEANS_DATA_DIR
#define SPDMEANS_DATA_DIR "."
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command =
      std::string(SPDMEANS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    return {-1, ""};
  }
  std::string output;
  std::array<char, 4096> buffer{};
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string data(const std::string& name) {
  return std::string(SPDMEANS_DATA_DIR) + "/" + name;
}

TEST(Cli, SpectralMeanOfDiagonalPair) {
  const RunResult r = run_cli("mean " + data("diag_1_4.txt") + " " +
                              data("diag_4_1.txt") + " --kind spectral --t 0.5");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_EQ(j.at("kind"), "spectral");
  EXPECT_NEAR(j.at("result").at("data").at(0).at(0).get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j.at("result").at("data").at(1).at(1).get<double>(), 2.0, 1e-12);
  EXPECT_LE(j.at("residuals").at("spectral_equation").get<double>(), 1e-9);
}

TEST(Cli, MetricMeanAtZeroEchoesA) {
  const RunResult r = run_cli("mean " + data("convexity_a.txt") + " " +
                              data("convexity_b.txt") + " --kind metric --t 0");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_DOUBLE_EQ(j.at("result").at("data").at(0).at(0).get<double>(),
                   12.9638);
  EXPECT_DOUBLE_EQ(j.at("result").at("data").at(0).at(1).get<double>(), 8.0820);
}

TEST(Cli, DistOfIdenticalFilesIsZero) {
  const RunResult r =
      run_cli("dist " + data("eye3.txt") + " " + data("eye3.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_LE(j.at("semi_metric").get<double>(), 1e-12);
  EXPECT_LE(j.at("thompson").get<double>(), 1e-12);
}

TEST(Cli, DistMatchesBundledCounterexample) {
  const RunResult r = run_cli("dist " + data("convexity_b.txt") + " " +
                              data("convexity_c.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_NEAR(j.at("semi_metric").get<double>(), 2.7798, 5e-3);
}

TEST(Cli, ToleranceOnTwoByTwoAlwaysSigma) {
  const RunResult r = run_cli("tolerance " + data("convexity_a.txt") + " " +
                              data("convexity_b.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_NE(j.at("report").at("relation"), "none");
  EXPECT_NE(j.at("inverse_report").at("relation"), "none");
  EXPECT_TRUE(j.at("closed_forms").contains("metric_linear_span"));
  EXPECT_LE(j.at("closed_forms")
                .at("metric_linear_span")
                .at("agreement_residual")
                .get<double>(),
            1e-8);
}

TEST(Cli, ToleranceDetectsNone) {
  const RunResult r =
      run_cli("tolerance " + data("eye3.txt") + " " + data("diag_1_2_3.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_EQ(j.at("report").at("relation"), "none");
}

TEST(Cli, PinchBuildsSingleStepChain) {
  const RunResult r =
      run_cli("pinch " + data("tuple_4_1.txt") + " " + data("tuple_2_2.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  ASSERT_EQ(j.at("steps").size(), 1u);
  EXPECT_EQ(j.at("steps").at(0).at("i").get<int>(), 1);
  EXPECT_EQ(j.at("steps").at(0).at("j").get<int>(), 2);
  EXPECT_NEAR(j.at("steps").at(0).at("t").get<double>(), 0.5, 1e-12);
  EXPECT_LE(j.at("scalar_replay_deviation").get<double>(), 1e-12);
  EXPECT_LE(j.at("matrix_replay_deviation").get<double>(), 1e-12);
}

TEST(Cli, PinchEqualTuplesGiveEmptyChain) {
  const RunResult r =
      run_cli("pinch " + data("tuple_2_2.txt") + " " + data("tuple_2_2.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_EQ(j.at("steps").size(), 0u);
}

TEST(Cli, PinchRejectsNonMajorizedWithExitThree) {
  const RunResult r =
      run_cli("pinch " + data("tuple_2_2.txt") + " " + data("tuple_4_1.txt"));
  EXPECT_EQ(r.exit_code, 3);
  const json j = json::parse(r.output);
  EXPECT_EQ(j.at("error").at("type"), "NotLogMajorized");
  EXPECT_EQ(j.at("error").at("exit_code").get<int>(), 3);
}

TEST(Cli, BadMatrixFileGivesExitTwo) {
  const RunResult r = run_cli("dist " + data("bad_asymmetric.txt") + " " +
                              data("eye3.txt"));
  EXPECT_EQ(r.exit_code, 2);
  const json j = json::parse(r.output);
  EXPECT_EQ(j.at("error").at("type"), "NotSymmetric");
}

TEST(Cli, MissingFileGivesExitTwo) {
  const RunResult r =
      run_cli("dist " + data("does_not_exist.txt") + " " + data("eye3.txt"));
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, MeanOutputsFeedBackAsInputs) {
  // Full pipeline: both one-third means against the fixture, distances taken
  // on the re-ingested results, reproducing the bundled counterexample.
  const std::string nat_b = ::testing::TempDir() + "cli_nat_b.json";
  const std::string nat_c = ::testing::TempDir() + "cli_nat_c.json";
  const double third = 1.0 / 3.0;

  const RunResult mb =
      run_cli("mean " + data("convexity_a.txt") + " " +
              data("convexity_b.txt") + " --kind spectral --t " +
              std::to_string(third));
  ASSERT_EQ(mb.exit_code, 0);
  const RunResult mc =
      run_cli("mean " + data("convexity_a.txt") + " " +
              data("convexity_c.txt") + " --kind spectral --t " +
              std::to_string(third));
  ASSERT_EQ(mc.exit_code, 0);
  {
    std::ofstream fb(nat_b);
    fb << json::parse(mb.output).at("result").dump();
    std::ofstream fc(nat_c);
    fc << json::parse(mc.output).at("result").dump();
  }

  const RunResult d = run_cli("dist " + nat_b + " " + nat_c);
  ASSERT_EQ(d.exit_code, 0) << d.output;
  EXPECT_NEAR(json::parse(d.output).at("semi_metric").get<double>(), 0.9328,
              5e-3);
}

TEST(Cli, LtkReportsShrinkingErrors) {
  const RunResult r = run_cli("ltk " + data("convexity_a.txt") + " " +
                              data("convexity_c.txt") + " --t 0.5");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(r.output);
  EXPECT_TRUE(j.at("last_below_first").get<bool>());
  EXPECT_TRUE(j.at("tail_strictly_decreasing").get<bool>());
  EXPECT_EQ(j.at("errors").size(), 7u);
}

TEST(Cli, VerifySmallRunPassesAndIsDeterministic) {
  const std::string args = "verify --m 2 --m 3 --trials 15 --seed 99";
  const RunResult first = run_cli(args);
  ASSERT_EQ(first.exit_code, 0) << first.output;
  const RunResult second = run_cli(args);
  ASSERT_EQ(second.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
  const json j = json::parse(first.output);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("config").at("rng"), "mt19937_64");
  EXPECT_EQ(j.at("config").at("seed").get<std::uint64_t>(), 99u);
}

TEST(Cli, VerifyUnusableClusterToleranceFailsWithExitFour) {
  // A cluster gap below roundoff splits every spectrum, so the
  // tolerance-relation suites must report failures.
  const RunResult r = run_cli("verify --m 2 --trials 5 --tau 1e-30");
  EXPECT_EQ(r.exit_code, 4);
  const json j = json::parse(r.output);
  EXPECT_FALSE(j.at("passed").get<bool>());
  bool named_failure = false;
  for (const auto& suite : j.at("suites")) {
    if (!suite.at("passed").get<bool>()) named_failure = true;
  }
  EXPECT_TRUE(named_failure);
}

TEST(Cli, VerifySeedChangesReport) {
  const RunResult a = run_cli("verify --m 2 --trials 10 --seed 1");
  const RunResult b = run_cli("verify --m 2 --trials 10 --seed 2");
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_NE(a.output, b.output);
}

TEST(Cli, UnknownSubcommandGivesExitTwo) {
  const RunResult r = run_cli("frobnicate");
  EXPECT_EQ(r.exit_code, 2);
}

}  // namespace
