#include "spdmeans/tolerance.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "spdmeans/geometry.hpp"
#include "spdmeans/random_spd.hpp"

namespace spdmeans {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

SPDMatrix diagm(const std::vector<double>& d) {
  const VectorXd v = Eigen::Map<const VectorXd>(d.data(), d.size());
  return validate_spd(MatrixXd(v.asDiagonal()));
}

SPDMatrix eye(int m) { return validate_spd(MatrixXd::Identity(m, m)); }

TEST(ClusterSpectrum, ExactTwoPointSpectrum) {
  const auto clusters =
      cluster_spectrum(eye(4), diagm({2, 2, 5, 5}), kClusterTau);
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_NEAR(clusters[0].value, 2.0, 1e-12);
  EXPECT_EQ(clusters[0].multiplicity, 2);
  EXPECT_NEAR(clusters[1].value, 5.0, 1e-12);
  EXPECT_EQ(clusters[1].multiplicity, 2);
}

TEST(ClusterSpectrum, IdempotentPairIsOneCluster) {
  Prng rng(51);
  const SPDMatrix a = random_spd(4, rng);
  const auto clusters = cluster_spectrum(a, a, kClusterTau);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_NEAR(clusters[0].value, 1.0, 1e-10);
  EXPECT_EQ(clusters[0].multiplicity, 4);
}

TEST(ClusterSpectrum, GreedyMergeOfRoundoffTwins) {
  const auto clusters =
      cluster_spectrum(eye(3), diagm({1.0, 1.0 + 1e-12, 4.0}), 1e-6);
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_NEAR(clusters[0].value, 1.0, 1e-9);
  EXPECT_EQ(clusters[0].multiplicity, 2);
  EXPECT_EQ(clusters[1].multiplicity, 1);
}

TEST(CheckSigma, AlwaysHoldsOnTwoByTwo) {
  Prng rng(52);
  for (int n = 0; n < 20; ++n) {
    const SPDMatrix a = random_spd(2, rng);
    const SPDMatrix b = random_spd(2, rng);
    EXPECT_NE(check_sigma(a, b).relation, Relation::none);
  }
}

TEST(CheckSigma, ThreeDistinctValuesFail) {
  const ToleranceReport r = check_sigma(eye(3), diagm({1, 2, 3}));
  EXPECT_EQ(r.relation, Relation::none);
  EXPECT_EQ(r.clusters.size(), 3u);
}

TEST(CheckSigma, TwoClustersDetected) {
  const ToleranceReport r = check_sigma(eye(4), diagm({2, 2, 7, 7}));
  EXPECT_EQ(r.relation, Relation::sigma);
  EXPECT_NEAR(r.a, 2.0, 1e-12);
  EXPECT_NEAR(r.b, 7.0, 1e-12);
  EXPECT_EQ(r.multiplicities.first, 2);
  EXPECT_EQ(r.multiplicities.second, 2);
}

TEST(CheckTilde, BalancedSpectrumSatisfiesDeterminantMatch) {
  // sqrt(2*8) = 4 = (2*2*8*8)^{1/4}.
  const ToleranceReport r = check_tilde(eye(4), diagm({2, 2, 8, 8}));
  EXPECT_EQ(r.relation, Relation::tilde);
  EXPECT_LE(r.det_residual, 1e-12);
}

TEST(CheckTilde, UnbalancedSpectrumIsOnlySigma) {
  // sqrt(2*8) = 4 but (2*2*2*8)^{1/4} = 2^{3/2}.
  const ToleranceReport r = check_tilde(eye(4), diagm({2, 2, 2, 8}));
  EXPECT_EQ(r.relation, Relation::sigma);
  EXPECT_GT(r.det_residual, 0.1);
}

TEST(CheckTilde, Reflexive) {
  Prng rng(53);
  const SPDMatrix a = random_spd(5, rng);
  const ToleranceReport r = check_tilde(a, a);
  EXPECT_EQ(r.relation, Relation::tilde);
  EXPECT_NEAR(r.a, 1.0, 1e-10);
  EXPECT_NEAR(r.b, 1.0, 1e-10);
}

TEST(CheckTilde, DistinctClustersForceEvenBalancedMultiplicities) {
  Prng rng(54);
  for (int n = 0; n < 20; ++n) {
    const auto [a, b] = make_inverse_tilde_pair(4, 0.5, 3.0, rng);
    const ToleranceReport r = check_tilde(mat_power(a, -1.0), b);
    ASSERT_EQ(r.relation, Relation::tilde);
    EXPECT_EQ(r.multiplicities.first, 2);
    EXPECT_EQ(r.multiplicities.second, 2);
  }
}

TEST(TildeMeanFormula, IdentityPair) {
  const SPDMatrix r = tilde_mean_formula(eye(2), eye(2), 0.5);
  EXPECT_LE(rel_fro_error(r.mat(), MatrixXd::Identity(2, 2)), 1e-14);
}

TEST(TildeMeanFormula, DiagonalUnitDetPair) {
  const SPDMatrix a = diagm({2, 0.5});
  const SPDMatrix b = diagm({0.5, 2});
  const SPDMatrix r = tilde_mean_formula(a, b, 0.5);
  EXPECT_LE(rel_fro_error(r.mat(), spectral_mean(a, b, 0.5).mat()), 1e-12);
  EXPECT_LE(rel_fro_error(r.mat(), MatrixXd::Identity(2, 2)), 1e-12);
}

TEST(TildeMeanFormula, ConstructedInstancesAgreeWithSpectralMean) {
  Prng rng(55);
  for (const int m : {2, 4, 6}) {
    const auto [a, b] = make_unit_det_inverse_tilde_pair(m, 3.0, rng);
    for (const double t : {-0.5, 0.3, 0.7}) {
      EXPECT_LE(rel_fro_error(tilde_mean_formula(a, b, t).mat(),
                              spectral_mean(a, b, t).mat()),
                1e-8)
          << "m=" << m << " t=" << t;
    }
  }
}

TEST(TildeMeanFormula, RejectsNonUnitDeterminant) {
  EXPECT_THROW(tilde_mean_formula(diagm({2, 2}), eye(2), 0.5),
               DeterminantNotOne);
}

TEST(TildeMeanFormula, RejectsAbsentRelation) {
  // Unit determinants but sigma(AB) has three distinct values.
  const SPDMatrix a = diagm({2.0, 1.0, 0.5});
  const SPDMatrix b = diagm({1.5, 1.0, 1.0 / 1.5});
  EXPECT_THROW(tilde_mean_formula(a, b, 0.5), RelationAbsent);
}

TEST(TildeMeanGeneral, ReducesToUnitDetFormula) {
  Prng rng(56);
  const auto [a, b] = make_unit_det_inverse_tilde_pair(4, 2.5, rng);
  EXPECT_LE(rel_fro_error(tilde_mean_general(a, b, 0.3).mat(),
                          tilde_mean_formula(a, b, 0.3).mat()),
            1e-9);
}

TEST(TildeMeanGeneral, MatchesTraceFormOnTwoByTwo) {
  Prng rng(57);
  for (int n = 0; n < 20; ++n) {
    const SPDMatrix a = random_spd(2, rng);
    const SPDMatrix b = random_spd(2, rng);
    const double t = 0.5;
    const double root =
        std::sqrt(a.mat().determinant() * b.mat().determinant());
    const SPDMatrix s =
        SPDMatrix::trusted(root * mat_power(a, -1.0).mat() + b.mat());
    const SPDMatrix st = mat_power(s, t);
    const MatrixXd trace_form =
        std::pow(2.0 * root + (a.mat() * b.mat()).trace(), -t) * st.mat() *
        a.mat() * st.mat();
    EXPECT_LE(rel_fro_error(tilde_mean_general(a, b, t).mat(), trace_form),
              1e-8);
    EXPECT_LE(rel_fro_error(tilde_mean_general(a, b, t).mat(),
                            spectral_mean(a, b, t).mat()),
              1e-8);
  }
}

TEST(TildeMeanGeneral, ScaledDiagonalPair) {
  // 3 diag(2, 1/2) against 5 diag(1/2, 2): sigma(AB) collapses to {15}.
  const SPDMatrix a = SPDMatrix::trusted(3.0 * diagm({2, 0.5}).mat());
  const SPDMatrix b = SPDMatrix::trusted(5.0 * diagm({0.5, 2}).mat());
  EXPECT_LE(rel_fro_error(tilde_mean_general(a, b, 0.4).mat(),
                          spectral_mean(a, b, 0.4).mat()),
            1e-8);
}

TEST(LAb, EndpointValues) {
  EXPECT_DOUBLE_EQ(l_ab(3.0, 7.0, 0.0), 1.0);
  EXPECT_NEAR(l_ab(3.0, 7.0, 1.0), 0.0, 1e-15);
}

TEST(LAb, HandValue) {
  EXPECT_NEAR(l_ab(4.0, 1.0, 0.5), 2.0 / 3.0, 1e-15);
}

TEST(LAb, AnalyticLimitAtEqualArguments) {
  EXPECT_NEAR(l_ab(2.0, 2.0, 0.3), std::pow(2.0, 0.3) * 0.7, 1e-15);
  EXPECT_NEAR(l_ab(2.0, 2.0 * (1.0 + 1e-12), 0.3), std::pow(2.0, 0.3) * 0.7,
              1e-9);
}

TEST(LAb, RejectsNonpositive) {
  EXPECT_THROW(l_ab(0.0, 1.0, 0.5), NonpositiveInput);
  EXPECT_THROW(l_ab(1.0, -1.0, 0.5), NonpositiveInput);
}

TEST(SigmaMetricLinear, SingleClusterReducesToScalarCurve) {
  Prng rng(58);
  const SPDMatrix a = random_spd(3, rng);
  const SPDMatrix b = SPDMatrix::trusted(1.7 * a.mat());
  EXPECT_LE(rel_fro_error(sigma_metric_mean_linear(a, b, 0.4).mat(),
                          metric_mean(a, b, 0.4).mat()),
            1e-8);
}

TEST(SigmaMetricLinear, MatchesMetricMeanOnTwoByTwo) {
  Prng rng(59);
  for (int n = 0; n < 20; ++n) {
    const SPDMatrix a = random_spd(2, rng);
    const SPDMatrix b = random_spd(2, rng);
    EXPECT_LE(rel_fro_error(sigma_metric_mean_linear(a, b, 0.5).mat(),
                            metric_mean(a, b, 0.5).mat()),
              1e-8);
  }
}

TEST(SigmaMetricLinear, ConstructedFourDimensionalInstance) {
  Prng rng(60);
  const auto [a, b] = make_sigma_pair(4, 2.0, 7.0, 2, rng);
  EXPECT_LE(rel_fro_error(sigma_metric_mean_linear(a, b, 0.25).mat(),
                          metric_mean(a, b, 0.25).mat()),
            1e-8);
}

TEST(SigmaMetricLinear, RejectsAbsentRelation) {
  EXPECT_THROW(sigma_metric_mean_linear(eye(3), diagm({1, 2, 3}), 0.5),
               RelationAbsent);
}

TEST(SigmaMetricLinear, RejectsWeightOutsideOpenInterval) {
  Prng rng(61);
  const SPDMatrix a = random_spd(2, rng);
  EXPECT_THROW(sigma_metric_mean_linear(a, a, 0.0), WeightOutOfRange);
}

TEST(SigmaSpectralFormula, DiagonalHandCase) {
  // A = I, B = diag(4, 1): c = 1/3 and the t = 1/2 value is diag(2, 1).
  const SPDMatrix r = sigma_spectral_mean_formula(eye(2), diagm({4, 1}), 0.5);
  EXPECT_NEAR(r.mat()(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(r.mat()(1, 1), 1.0, 1e-12);
}

TEST(SigmaSpectralFormula, MatchesSpectralMeanOnTwoByTwo) {
  Prng rng(62);
  for (int n = 0; n < 20; ++n) {
    const SPDMatrix a = random_spd(2, rng);
    const SPDMatrix b = random_spd(2, rng);
    EXPECT_LE(rel_fro_error(sigma_spectral_mean_formula(a, b, 0.5).mat(),
                            spectral_mean(a, b, 0.5).mat()),
              1e-8);
  }
}

TEST(SigmaSpectralFormula, DegenerateSpectrumReturnsScalarBranch) {
  const SPDMatrix r = sigma_spectral_mean_formula(eye(2), eye(2), 0.5);
  EXPECT_LE(rel_fro_error(r.mat(), MatrixXd::Identity(2, 2)), 1e-12);
}

TEST(SigmaSpectralFormula, RejectsAbsentRelation) {
  // sigma(AB) = {1, 2, 3} has three clusters.
  EXPECT_THROW(sigma_spectral_mean_formula(eye(3), diagm({1, 2, 3}), 0.5),
               RelationAbsent);
}

}  // namespace
}  // namespace spdmeans
