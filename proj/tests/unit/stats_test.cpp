#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "aif/error.hpp"
#include "aif/stats.hpp"
#include "test_support.hpp"

namespace aif {
namespace {

double BetaIntegralOracle(double a, double b, double x) {
  // Only used with a, b >= 1 so the integrand is bounded.
  auto f = [&](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0); };
  const double full = testing::Simpson(f, 0.0, 1.0, 20000);
  return testing::Simpson(f, 0.0, x, 20000) / full;
}

TEST(IncompleteBetaTest, BoundariesAndSymmetry) {
  EXPECT_EQ(RegularizedIncompleteBeta(2.0, 3.0, 0.0), 0.0);
  EXPECT_EQ(RegularizedIncompleteBeta(2.0, 3.0, 1.0), 1.0);
  EXPECT_NEAR(RegularizedIncompleteBeta(4.5, 4.5, 0.5), 0.5, 1e-14);
  for (double x : {0.1, 0.37, 0.8}) {
    EXPECT_NEAR(RegularizedIncompleteBeta(2.5, 7.0, x), 1.0 - RegularizedIncompleteBeta(7.0, 2.5, 1.0 - x),
                1e-13);
  }
  // I_x(1, b) = 1 - (1 - x)^b.
  EXPECT_NEAR(RegularizedIncompleteBeta(1.0, 1.5, 0.5), 1.0 - std::pow(0.5, 1.5), 1e-14);
  EXPECT_NEAR(RegularizedIncompleteBeta(1.0, 3.0, 0.2), 1.0 - std::pow(0.8, 3.0), 1e-14);
  EXPECT_THROW(RegularizedIncompleteBeta(0.0, 1.0, 0.5), Error);
  EXPECT_THROW(RegularizedIncompleteBeta(1.0, 1.0, 1.5), Error);
}

TEST(IncompleteBetaTest, MatchesQuadrature) {
  for (double a : {1.0, 2.0, 3.5, 10.0})
    for (double b : {1.0, 2.5, 6.0})
      for (double x : {0.05, 0.3, 0.5, 0.9})
        EXPECT_NEAR(RegularizedIncompleteBeta(a, b, x), BetaIntegralOracle(a, b, x), 1e-9)
            << a << " " << b << " " << x;
}

TEST(StudentTTest, CdfKnownValues) {
  EXPECT_DOUBLE_EQ(StudentTCdf(0.0, 5.0), 0.5);
  // dof = 1 is Cauchy.
  EXPECT_NEAR(StudentTCdf(1.0, 1.0), 0.75, 1e-14);
  // dof = 2: F(t) = 1/2 + t / (2 sqrt(2 + t^2)).
  EXPECT_NEAR(StudentTCdf(-1.5, 2.0), 0.5 - 1.5 / (2.0 * std::sqrt(4.25)), 1e-14);
  EXPECT_NEAR(StudentTTwoSidedP(2.0, 2.0), 1.0 - 2.0 / std::sqrt(6.0), 1e-14);
}

TEST(StudentTTest, TwoSidedMatchesIntegration) {
  for (double dof : {1.5, 3.0, 8.0, 30.0, 250.0})
    for (double t : {0.0, 0.4, 1.0, 2.2, 4.0, -3.1})
      EXPECT_NEAR(StudentTTwoSidedP(t, dof), testing::TwoSidedPByIntegration(t, dof), 1e-9);
}

TEST(WelchTest, ShiftedSequences) {
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {2, 3, 4, 5, 6};
  const auto r = WelchTTest(a, b);
  EXPECT_NEAR(r.t_statistic, -1.0, 1e-14);
  EXPECT_NEAR(r.degrees_of_freedom, 8.0, 1e-12);
  EXPECT_NEAR(r.p_value, testing::TwoSidedPByIntegration(-1.0, 8.0), 1e-9);
  EXPECT_NEAR(r.p_value, 0.3466, 1e-4);
  EXPECT_DOUBLE_EQ(r.mean_a, 3.0);
  EXPECT_DOUBLE_EQ(r.mean_b, 4.0);
  EXPECT_FALSE(r.degenerate);
}

TEST(WelchTest, RandomPairsAgainstOracle) {
  std::mt19937 gen(17);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> size(2, 60);
  std::uniform_real_distribution<double> spread(0.2, 5.0), shift(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(size(gen)), b(size(gen));
    const double sa = spread(gen), sb = spread(gen), mu = shift(gen);
    for (auto& v : a) v = sa * normal(gen);
    for (auto& v : b) v = mu + sb * normal(gen);
    const auto oracle = testing::WelchByHand(a, b);
    const auto r = WelchTTest(a, b);
    EXPECT_NEAR(r.t_statistic, oracle.t, 1e-10 * std::max(1.0, std::abs(oracle.t)));
    EXPECT_NEAR(r.degrees_of_freedom, oracle.dof, 1e-9 * oracle.dof);
    EXPECT_NEAR(r.p_value, oracle.p, 1e-6);
  }
}

TEST(WelchTest, DegenerateSamples) {
  const std::vector<double> c1 = {2.0, 2.0, 2.0}, c2 = {3.0, 3.0};
  const auto same = WelchTTest(c1, c1);
  EXPECT_TRUE(same.degenerate);
  EXPECT_EQ(same.t_statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  const auto differ = WelchTTest(c1, c2);
  EXPECT_TRUE(differ.degenerate);
  EXPECT_EQ(differ.t_statistic, -std::numeric_limits<double>::infinity());
  EXPECT_EQ(differ.p_value, 0.0);
  const std::vector<double> one = {1.0};
  EXPECT_THROW(WelchTTest(one, c1), Error);
}

TEST(WelchTest, OneConstantSampleIsFine) {
  const std::vector<double> c = {1.0, 1.0, 1.0, 1.0}, v = {0.0, 1.0, 2.0, 3.0};
  const auto r = WelchTTest(c, v);
  EXPECT_FALSE(r.degenerate);
  const auto oracle = testing::WelchByHand(c, v);
  EXPECT_NEAR(r.t_statistic, oracle.t, 1e-12);
  EXPECT_NEAR(r.degrees_of_freedom, 3.0, 1e-12);
}

TEST(PooledTest, EqualSizesGiveWelchStatistic) {
  const std::vector<double> a = {1.2, 3.4, 2.2, 5.0}, b = {0.1, 0.4, 1.9, 0.0};
  const auto pooled = PooledTTest(a, b);
  const auto welch = WelchTTest(a, b);
  EXPECT_NEAR(pooled.t_statistic, welch.t_statistic, 1e-12);
  EXPECT_DOUBLE_EQ(pooled.degrees_of_freedom, 6.0);
  EXPECT_NEAR(pooled.p_value, testing::TwoSidedPByIntegration(pooled.t_statistic, 6.0), 1e-9);
}

TEST(SpearmanTest, RanksAndTies) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> up = {2, 4, 8, 16, 1000}, down = {5, 3, 2, 1, -7};
  EXPECT_NEAR(SpearmanCorrelation(x, up), 1.0, 1e-15);
  EXPECT_NEAR(SpearmanCorrelation(x, down), -1.0, 1e-15);
  // Average ranks for the ties: y ranks (1.5, 1.5, 3, 4.5, 4.5).
  const std::vector<double> tied = {0, 0, 1, 2, 2};
  const double rx[] = {1, 2, 3, 4, 5}, ry[] = {1.5, 1.5, 3, 4.5, 4.5};
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 5; ++i) {
    sxy += (rx[i] - 3) * (ry[i] - 3);
    sxx += (rx[i] - 3) * (rx[i] - 3);
    syy += (ry[i] - 3) * (ry[i] - 3);
  }
  EXPECT_NEAR(SpearmanCorrelation(x, tied), sxy / std::sqrt(sxx * syy), 1e-14);
  const std::vector<double> flat = {1, 1, 1, 1, 1};
  EXPECT_TRUE(std::isnan(SpearmanCorrelation(x, flat)));
  EXPECT_THROW(SpearmanCorrelation(x, std::vector<double>{1, 2}), Error);
}

TEST(MomentsTest, MeanAndVariance) {
  const std::vector<double> v = {2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(Mean(v), 5.0);
  EXPECT_DOUBLE_EQ(SampleVariance(v), 32.0 / 7.0);
  EXPECT_THROW(Mean(std::vector<double>{}), Error);
}

}  // namespace
}  // namespace aif
