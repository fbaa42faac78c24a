#include "fdrlim/estimators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "fdrlim/errors.hpp"
#include "fdrlim/grenander.hpp"
#include "fdrlim/kde.hpp"

namespace fdrlim {
namespace {

double brute_a(const std::vector<double>& w, double y) {
  double sum = 0.0;
  int cnt = 0;
  for (double v : w) {
    if (v <= y) {
      sum += v;
      ++cnt;
    }
  }
  return cnt == 0 ? 0.0 : sum / cnt;
}

double brute_b(const std::vector<double>& w, double y) {
  double sum = 0.0;
  int cnt = 0;
  for (double v : w) {
    if (v > y) {
      sum += 1.0 - v;
      ++cnt;
    }
  }
  return cnt == 0 ? 0.0 : sum / cnt;
}

TEST(LfdrHatVectorTest, HandTracedSelectionFunctionals) {
  const auto v = LfdrHatVector::from_values({0.1, 0.3, 0.8});

  EXPECT_DOUBLE_EQ(v.a_hat(0.0), 0.0);
  EXPECT_DOUBLE_EQ(v.b_hat(0.0), 0.6);
  EXPECT_DOUBLE_EQ(v.a_hat(0.1), 0.1);
  EXPECT_DOUBLE_EQ(v.b_hat(0.1), 0.45);
  EXPECT_DOUBLE_EQ(v.a_hat(0.3), 0.2);
  EXPECT_NEAR(v.b_hat(0.3), 0.2, 1e-12);  // prefix-sum difference, not exact
  EXPECT_DOUBLE_EQ(v.a_hat(0.5), 0.2);   // flat between observed values
  EXPECT_DOUBLE_EQ(v.a_hat(0.8), 0.4);
  EXPECT_DOUBLE_EQ(v.b_hat(0.8), 0.0);
  EXPECT_DOUBLE_EQ(v.a_hat(1.0), 0.4);

  EXPECT_DOUBLE_EQ(v.y_star(0.05), 0.0);
  EXPECT_DOUBLE_EQ(v.y_star(0.1), 0.1);
  EXPECT_DOUBLE_EQ(v.y_star(0.25), 0.3);
  // a_hat(0.8) floats one ulp above 2/5, so probe just past the knife edge
  EXPECT_DOUBLE_EQ(v.y_star(0.41), 0.8);
  EXPECT_DOUBLE_EQ(v.y_star(1.0), 0.8);
}

TEST(LfdrHatVectorTest, HandTracedHull) {
  const auto v = LfdrHatVector::from_values({0.1, 0.3, 0.8});
  const auto hull = v.b_star_hull();

  ASSERT_EQ(hull.points.size(), 5u);
  EXPECT_DOUBLE_EQ(hull.points[0].s, 0.0);
  EXPECT_DOUBLE_EQ(hull.points[0].t, 0.6);
  EXPECT_DOUBLE_EQ(hull.points[1].s, 0.1);
  EXPECT_DOUBLE_EQ(hull.points[1].t, 0.45);
  EXPECT_DOUBLE_EQ(hull.points[2].s, 0.2);
  EXPECT_NEAR(hull.points[2].t, 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(hull.points[3].s, 0.4);
  EXPECT_DOUBLE_EQ(hull.points[3].t, 0.0);
  EXPECT_DOUBLE_EQ(hull.points[4].s, 1.0);
  EXPECT_DOUBLE_EQ(hull.points[4].t, 0.0);

  // (0.1, 0.45) sits above the chord and drops out of the hull
  const auto& ks = hull.gcm.knots();
  ASSERT_EQ(ks.size(), 4u);
  EXPECT_DOUBLE_EQ(ks[1].s, 0.2);
  EXPECT_NEAR(ks[1].t, 0.2, 1e-12);

  const auto br = hull.gcm.bracket(0.3);
  EXPECT_DOUBLE_EQ(ks[br.lo].s, 0.2);
  EXPECT_DOUBLE_EQ(ks[br.hi].s, 0.4);
  EXPECT_DOUBLE_EQ(br.w, 0.5);
}

TEST(LfdrHatVectorTest, TiesCollapseToOneKnot) {
  const auto v = LfdrHatVector::from_values({0.2, 0.6, 0.2});
  const auto hull = v.b_star_hull();
  ASSERT_EQ(hull.points.size(), 4u);  // 0, two distinct values, (1,0)
  EXPECT_DOUBLE_EQ(hull.points[1].s, 0.2);
  EXPECT_DOUBLE_EQ(hull.points[1].t, 0.4);
  EXPECT_NEAR(hull.points[2].s, 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(hull.points[2].t, 0.0);

  EXPECT_DOUBLE_EQ(v.y_star(0.2), 0.2);   // tie group enters as a whole
  EXPECT_DOUBLE_EQ(v.y_star(0.19), 0.0);
}

TEST(LfdrHatVectorTest, MatchesBruteForceOnRandomVectors) {
  std::mt19937_64 gen(20260819);
  std::uniform_int_distribution<int> size_dist(1, 40);
  std::uniform_real_distribution<double> val_dist(0.0, 1.0);
  std::uniform_int_distribution<int> grid_dist(1, 8);
  for (int rep = 0; rep < 400; ++rep) {
    std::vector<double> w(static_cast<std::size_t>(size_dist(gen)));
    const bool quantized = rep % 3 == 0;  // force ties on a coarse grid
    for (double& v : w) {
      v = quantized ? grid_dist(gen) / 8.0 : val_dist(gen);
    }
    const auto vec = LfdrHatVector::from_values(w);
    for (double y : {0.0, 0.124, 0.125, 0.25, 0.5, 0.874, 0.875, 1.0}) {
      ASSERT_NEAR(vec.a_hat(y), brute_a(w, y), 1e-12) << "rep " << rep << " y " << y;
      ASSERT_NEAR(vec.b_hat(y), brute_b(w, y), 1e-12) << "rep " << rep << " y " << y;
    }
    for (double q : w) {
      ASSERT_NEAR(vec.a_hat(q), brute_a(w, q), 1e-12);
      ASSERT_NEAR(vec.b_hat(q), brute_b(w, q), 1e-12);
    }
    // y-star agrees with a direct scan over candidates
    for (double alpha : {0.05, 0.2, 0.5, 0.9}) {
      double best = 0.0;
      for (double q : w) {
        if (brute_a(w, q) <= alpha) best = std::max(best, q);
      }
      ASSERT_DOUBLE_EQ(vec.y_star(alpha), best) << "rep " << rep;
    }
  }
}

TEST(LfdrHatVectorTest, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(LfdrHatVector::from_values({0.5, -0.1}), std::invalid_argument);
  EXPECT_THROW(LfdrHatVector::from_values({1.5}), std::invalid_argument);
  EXPECT_NO_THROW(LfdrHatVector::from_values({0.0, 1.0}));
  EXPECT_THROW(LfdrHatVector::from_values({}).b_star_hull(), std::invalid_argument);
}

TEST(LfdrHatTest, ClipsAndHandlesVanishingDensity) {
  const DensityFn f0 = [](double) { return 1.0; };
  const DensityFn fhat = [](double x) { return x > 0.5 ? 0.0 : 2.0; };
  const auto v = lfdr_hat(0.6, f0, fhat, std::vector<double>{0.25, 0.75, 0.5});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v.values()[0], 0.3);  // 0.6 / 2
  EXPECT_DOUBLE_EQ(v.values()[1], 1.0);  // density hit zero
  EXPECT_DOUBLE_EQ(v.values()[2], 0.3);

  const DensityFn undershoot = [](double) { return 0.4; };
  const auto clipped = lfdr_hat(0.6, f0, undershoot, std::vector<double>{0.1});
  EXPECT_DOUBLE_EQ(clipped.values()[0], 1.0);  // 1.5 clips to 1

  EXPECT_THROW(lfdr_hat(0.0, f0, fhat, std::vector<double>{0.1}), std::invalid_argument);
  EXPECT_THROW(lfdr_hat(1.0, f0, fhat, std::vector<double>{0.1}), std::invalid_argument);
}

TEST(EstimatorSpecTest, ParsesAndRoundTrips) {
  EXPECT_EQ(parse_estimator_spec("grenander").kind, EstimatorSpec::Kind::kGrenander);
  EXPECT_EQ(parse_estimator_spec("kde").kind, EstimatorSpec::Kind::kKde);
  EXPECT_FALSE(parse_estimator_spec("kde").bandwidth.has_value());
  EXPECT_EQ(parse_estimator_spec("oracle").kind, EstimatorSpec::Kind::kOracle);

  const EstimatorSpec k = parse_estimator_spec("kde(h=0.2)");
  EXPECT_EQ(k.kind, EstimatorSpec::Kind::kKde);
  ASSERT_TRUE(k.bandwidth.has_value());
  EXPECT_DOUBLE_EQ(*k.bandwidth, 0.2);
  EXPECT_EQ(k.to_string(), "kde(h=0.2)");
  EXPECT_EQ(parse_estimator_spec("grenander").to_string(), "grenander");

  EXPECT_THROW(parse_estimator_spec("kde(h=0)"), ConfigError);
  EXPECT_THROW(parse_estimator_spec("kde(h=-1)"), ConfigError);
  EXPECT_THROW(parse_estimator_spec("kde(h=abc)"), ConfigError);
  EXPECT_THROW(parse_estimator_spec("kde(h=0.2"), ConfigError);
  EXPECT_THROW(parse_estimator_spec("banana"), ConfigError);
  EXPECT_THROW(parse_estimator_spec(""), ConfigError);
}

TEST(EstimatorSpecTest, BuildsMatchingDensityEstimates) {
  const std::vector<double> x{0.1, 0.2, 0.4, 0.7};

  const DensityFn g = make_density_estimate(parse_estimator_spec("grenander"), x, nullptr);
  const GrenanderFit direct = grenander(x);
  for (double t : {0.05, 0.2, 0.5, 0.9}) EXPECT_DOUBLE_EQ(g(t), direct.density_at(t));

  const DensityFn k = make_density_estimate(parse_estimator_spec("kde(h=0.3)"), x, nullptr);
  const KdeFit kd = kde(x, 0.3);
  for (double t : {0.05, 0.2, 0.5, 0.9}) EXPECT_DOUBLE_EQ(k(t), kd.density_at(t));

  const MixtureModel m = MixtureModel::uniform_step(0.75, 0.5);
  const DensityFn o = make_density_estimate(parse_estimator_spec("oracle"), x, &m);
  EXPECT_DOUBLE_EQ(o(0.3), 1.25);
  EXPECT_DOUBLE_EQ(o(0.7), 0.75);

  EXPECT_THROW(make_density_estimate(parse_estimator_spec("oracle"), x, nullptr),
               std::invalid_argument);
}

}  // namespace
}  // namespace fdrlim
