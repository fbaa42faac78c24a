#include "fdrlim/kde.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "fdrlim/stats.hpp"

namespace fdrlim {
namespace {

TEST(KdeTest, SinglePointKernelValues) {
  const KdeFit fit = kde(std::vector<double>{0.0}, 1.0);
  EXPECT_DOUBLE_EQ(fit.density_at(0.0), 0.9375);
  EXPECT_DOUBLE_EQ(fit.density_at(0.5), 0.52734375);   // 0.9375 * (1 - 0.25)^2
  EXPECT_DOUBLE_EQ(fit.density_at(-0.5), 0.52734375);
  EXPECT_DOUBLE_EQ(fit.density_at(1.0), 0.0);           // kernel support is open
  EXPECT_DOUBLE_EQ(fit.density_at(1.5), 0.0);
  EXPECT_DOUBLE_EQ(fit.density_at(-3.0), 0.0);
}

TEST(KdeTest, TwoPointMixture) {
  const KdeFit fit = kde(std::vector<double>{-0.5, 0.5}, 1.0);
  EXPECT_DOUBLE_EQ(fit.density_at(0.0), 0.52734375);
  EXPECT_DOUBLE_EQ(fit.density_at(0.5), 0.46875);  // right point only, u = 0
  EXPECT_DOUBLE_EQ(fit.density_at(2.0), 0.0);
}

TEST(KdeTest, RuleOfThumbBandwidthUsesIqrWhenSmaller) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  const KdeFit fit = kde(x);
  // IQR/1.349 beats the sd of sqrt(2.5) here
  EXPECT_NEAR(fit.bandwidth, 2.778 * (2.0 / 1.349) * std::pow(5.0, -0.2), 1e-12);
}

TEST(KdeTest, BandwidthFallsBackToSdWhenIqrDegenerates) {
  const std::vector<double> x{0.0, 0.0, 0.0, 0.0, 1.0};
  const KdeFit fit = kde(x);
  EXPECT_NEAR(fit.bandwidth, 2.778 * std::sqrt(0.2) * std::pow(5.0, -0.2), 1e-12);
}

TEST(KdeTest, InputValidation) {
  EXPECT_THROW(kde(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(kde(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(kde(std::vector<double>{2.0, 2.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(kde(std::vector<double>{1.0, 2.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(kde(std::vector<double>{1.0, 2.0}, -0.5), std::invalid_argument);
  // an explicit bandwidth rescues the degenerate cases
  const KdeFit fit = kde(std::vector<double>{2.0, 2.0, 2.0}, 0.5);
  EXPECT_DOUBLE_EQ(fit.density_at(2.0), 0.9375 / 0.5);
}

TEST(KdeTest, IntegratesToOne) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(60);
  for (double& v : x) v = dist(gen);
  const KdeFit fit = kde(x);

  const double lo = fit.sorted_x.front() - fit.bandwidth - 0.5;
  const double hi = fit.sorted_x.back() + fit.bandwidth + 0.5;
  const int panels = 20000;
  const double step = (hi - lo) / panels;
  double sum = fit.density_at(lo) + fit.density_at(hi);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * fit.density_at(lo + i * step);
  }
  EXPECT_NEAR(sum * step / 3.0, 1.0, 1e-6);
}

TEST(KdeTest, SymmetricSampleGivesSymmetricDensity) {
  const KdeFit fit = kde(std::vector<double>{-1.0, 1.0}, 0.8);
  for (double d : {0.1, 0.3, 0.7, 1.2}) {
    EXPECT_NEAR(fit.density_at(d), fit.density_at(-d), 1e-14);
  }
}

TEST(KdeTest, NonnegativeAndContinuousAcrossWindowEdges) {
  const KdeFit fit = kde(std::vector<double>{0.2, 0.4, 0.9}, 0.25);
  double prev = fit.density_at(-0.2);
  for (double t = -0.2; t <= 1.4; t += 1e-3) {
    const double d = fit.density_at(t);
    ASSERT_GE(d, 0.0);
    ASSERT_NEAR(d, prev, 0.03);  // no jumps at the support boundaries
    prev = d;
  }
}

}  // namespace
}  // namespace fdrlim
