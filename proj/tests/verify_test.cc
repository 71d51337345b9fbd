#include "spdmeans/verify.hpp"

#include <gtest/gtest.h>

namespace spdmeans {
namespace {

TEST(CheckHelpers, LeAndGeTrackWorstValues) {
  SuiteResult r{"demo"};
  check_le(r, "residual", 1e-10, 1e-8);
  check_le(r, "residual", 5e-9, 1e-8);
  EXPECT_TRUE(r.passed);
  EXPECT_DOUBLE_EQ(r.metrics["residual"].worst, 5e-9);
  check_le(r, "residual", 2e-8, 1e-8);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.metrics["residual"].ok);

  SuiteResult g{"demo_ge"};
  check_ge(g, "margin", 0.5, 0.0);
  check_ge(g, "margin", -0.25, 0.0);
  EXPECT_FALSE(g.passed);
  EXPECT_DOUBLE_EQ(g.metrics["margin"].worst, -0.25);
}

TEST(ConvexityFixture, BundledMatricesPass) {
  const SuiteResult r = suite_convexity_counterexample(VerifyOptions{});
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.metrics.at("mean_distance").worst, 0.9328, 5e-3);
  EXPECT_NEAR(r.metrics.at("scaled_distance").worst, 0.9266, 5e-3);
  EXPECT_GT(r.metrics.at("convexity_gap").worst, 0.0);
}

TEST(ConvexityFixture, CorruptedEntryIsCaught) {
  Eigen::MatrixXd b = fixture_b();
  b(0, 0) += 0.5;
  b(1, 1) += 0.5;
  const SuiteResult r =
      convexity_counterexample_check(fixture_a(), b, fixture_c());
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.name, "convexity_counterexample");
  EXPECT_FALSE(r.notes.empty());
}

TEST(ConvexityFixture, NonPositiveFixtureIsRejectedGracefully) {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  const SuiteResult r =
      convexity_counterexample_check(fixture_a(), bad, fixture_c());
  EXPECT_FALSE(r.passed);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("fixture rejected"), std::string::npos);
}

TEST(Suites, SeededRunsAreReproducible) {
  VerifyOptions opts;
  opts.dims = std::vector<int>{2, 3};
  opts.trials = 20;
  const SuiteResult first = suite_fiedler_ptak(opts);
  const SuiteResult second = suite_fiedler_ptak(opts);
  EXPECT_TRUE(first.passed);
  EXPECT_EQ(first.trials, second.trials);
  EXPECT_DOUBLE_EQ(first.metrics.at("eigenvalue_gap").worst,
                   second.metrics.at("eigenvalue_gap").worst);
}

TEST(Suites, DimensionAndTrialOverridesApply) {
  VerifyOptions opts;
  opts.dims = std::vector<int>{3};
  opts.trials = 7;
  const SuiteResult r = suite_geodesic(opts);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.trials, 7);
}

}  // namespace
}  // namespace spdmeans
